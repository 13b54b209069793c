#ifndef MATCHLET_VERIFICATION_HPP
#define MATCHLET_VERIFICATION_HPP

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "matchlet/quadrature.hpp"

namespace matchlet {

/*
 * A band-limited function described by its Fourier transform
 * f^(xi) = int f(t) e^{-i xi t} dt.
 *
 * `breakpoints` lists the positive frequencies where the transform may
 * fail to be smooth, in increasing order. The support is contained in
 * [front, back] together with its mirror image [-back, -front].
 */
struct FrequencyFunction {
    std::function<cplx(double)> transform;
    std::vector<double> breakpoints;
};

/*
 * Gram matrix of f_{j,k}(x) = 2^{j/2} f(2^j x + k) against
 * g_{j',k'}(x) = 2^{j'/2} g(2^{j'} x + k') for k, k' in [-K, K].
 *
 * Entries are (1/2pi) int f^_{j,k} conj(g^_{j',k'}) d xi computed by the
 * shared quadrature engine, with f^_{j,k}(xi) = 2^{-j/2} e^{i xi k / 2^j} f^(xi / 2^j).
 * Row index is k + K, column index is k' + K.
 */
struct GramResult {
    Eigen::MatrixXcd matrix;
    double error = 0.0;  // max entrywise change under the last refinement
    int panels = 0;
};

GramResult gram_matrix(const FrequencyFunction& f, const FrequencyFunction& g, int shifts,
                       int scale_f, int scale_g, const QuadratureSpec& spec = {});

inline GramResult gram_matrix(const FrequencyFunction& f, int shifts, int scale_f, int scale_g,
                              const QuadratureSpec& spec = {}) {
    return gram_matrix(f, f, shifts, scale_f, scale_g, spec);
}

/// max |G - G^H|.
double hermitian_defect(const Eigen::MatrixXcd& g);
/// max over diagonals of |G(r, c) - G(r - 1, c - 1)|.
double toeplitz_defect(const Eigen::MatrixXcd& g);

/// Sum over k of |f^(xi + 2 pi k)|^2, only touching translates that meet the support.
double periodized_energy(const FrequencyFunction& f, double xi);

/// `count` equispaced points on [lo, hi), lo included.
std::vector<double> uniform_grid(double lo, double hi, int count);

enum class Comparison {
    within,    // |measured - target| <= tolerance
    at_most,   // measured <= target + tolerance
    at_least,  // measured >= target - tolerance
};

struct Check {
    std::string name;
    double measured = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    Comparison comparison = Comparison::within;
    bool passed = false;
    bool required = true;  // informational checks do not affect the verdict
    std::string oracle;
    std::string note;
};

struct VerificationReport {
    std::string subject;
    std::vector<Check> checks;

    /// Appends a check and evaluates it.
    Check& add(std::string name, double measured, double target, double tolerance,
               Comparison comparison, std::string oracle, std::string note = {});
    /// Appends a check with a precomputed verdict (design rejections and the like).
    Check& add_flag(std::string name, bool passed, std::string oracle, std::string note = {});

    /// True when every required check passed.
    bool passed() const;
    const Check* find(const std::string& name) const;
};

bool evaluate(double measured, double target, double tolerance, Comparison comparison);
std::string to_string(Comparison c);
Comparison comparison_from_string(const std::string& s);

}  // namespace matchlet

#endif  // MATCHLET_VERIFICATION_HPP
