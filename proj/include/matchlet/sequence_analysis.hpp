#ifndef MATCHLET_SEQUENCE_ANALYSIS_HPP
#define MATCHLET_SEQUENCE_ANALYSIS_HPP

#include <span>
#include <vector>

#include "matchlet/quadrature.hpp"
#include "matchlet/sequence.hpp"

namespace matchlet {

/*
 * Trigonometric symbol Gamma(xi) = sum_k gamma_k e^{i k xi} of finite data,
 * possibly the truncation of decaying data. `truncation_error` bounds
 * sup_xi |Gamma_true(xi) - Gamma(xi)|.
 */
class SymbolPolynomial {
public:
    SymbolPolynomial() = default;
    SymbolPolynomial(long first_index, std::vector<cplx> coefficients, double truncation_error = 0.0,
                     int grid_density = 4096);

    cplx operator()(double xi) const;
    double modulus_squared(double xi) const { return std::norm((*this)(xi)); }

    long first_index() const { return first_; }
    long last_index() const { return first_ + static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<cplx>& coefficients() const { return coeffs_; }
    double truncation_error() const { return truncation_error_; }
    int grid_density() const { return grid_density_; }

    /// Coefficients of z^{max(-N1,0)} sum_k gamma_k z^k in ascending powers of z.
    std::vector<cplx> algebraic_coefficients() const;

private:
    long first_ = 0;
    std::vector<cplx> coeffs_;
    double truncation_error_ = 0.0;
    int grid_density_ = 4096;
};

/// Decaying data are truncated where the certified tail drops below `tolerance`.
SymbolPolynomial symbol_from_sequence(const DataSequence& gamma, double tolerance = 1e-12,
                                      int grid_density = 4096);

/// Riesz constants: lower = min |Gamma|^2, upper = max |Gamma|^2 over [0, 2pi).
struct FrameBounds {
    double lower = 0.0;
    double upper = 0.0;
    double argmin = 0.0;
    double argmax = 0.0;
    double uncertainty = 0.0;  // from truncating decaying data
    bool riesz = false;        // lower exceeds the positivity tolerance plus uncertainty
};

/// Grid scan at the symbol's density, then golden-section refinement of every local extremum.
FrameBounds compute_frame_bounds(const SymbolPolynomial& symbol, double positivity_tolerance = 1e-10);

struct RootSet {
    std::vector<cplx> roots;  // repeated according to multiplicity
    cplx leading{};           // coefficient of the highest power
    double min_circle_distance = 0.0;
    double max_residual = 0.0;  // max |P(r)| / sum_j |c_j| |r|^j

    struct Cluster {
        cplx root;
        int multiplicity;
    };
    /// Groups roots closer than `radius` (relative to max(1, |r|)).
    std::vector<Cluster> clusters(double radius = 1e-6) const;
};

class RootSolveError : public Error {
public:
    RootSolveError(const std::string& what, std::vector<cplx> partial)
        : Error(what), partial_(std::move(partial)) {}
    const std::vector<cplx>& partial_roots() const { return partial_; }

private:
    std::vector<cplx> partial_;
};

/// Roots of c_0 + c_1 z + ... + c_d z^d via companion eigenvalues and Newton polishing.
RootSet polynomial_roots(std::span<const cplx> ascending, double residual_tolerance = 1e-10);

/// Rebuilds leading * prod (z - r) in ascending powers.
std::vector<cplx> coefficients_from_roots(std::span<const cplx> roots, cplx leading);

struct CircleCheck {
    bool passed = true;
    std::vector<cplx> offenders;
};

/// Passes iff every root satisfies | |z| - 1 | >= margin.
CircleCheck unit_circle_check(const RootSet& roots, double margin);

/*
 * Moves every root with | |z| - 1 | < delta radially to modulus 1 + delta and
 * rebuilds the data, keeping gamma_{N1} fixed. Real data stay real.
 * Data without such roots are returned unchanged.
 */
DataSequence perturb_roots(const DataSequence& gamma, double delta);

/// Roots moved by perturb_roots (before, after), for reporting.
std::vector<std::pair<cplx, cplx>> perturbation_moves(const DataSequence& gamma, double delta);

/// Fourier coefficients beta_k, |k| <= half_width, of 1 / Gamma.
struct DualCoefficients {
    long first_index = 0;
    std::vector<cplx> beta;
    double residual = 0.0;          // max over a grid of |Gamma * sum beta_k e^{ik xi} - 1|
    double quadrature_error = 0.0;  // largest per-coefficient refinement change

    cplx operator[](long k) const;
};

DualCoefficients dual_symbol_coefficients(const SymbolPolynomial& symbol, int half_width,
                                          const QuadratureSpec& spec = {},
                                          double positivity_tolerance = 1e-10);

}  // namespace matchlet

#endif  // MATCHLET_SEQUENCE_ANALYSIS_HPP
