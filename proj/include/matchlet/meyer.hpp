#ifndef MATCHLET_MEYER_HPP
#define MATCHLET_MEYER_HPP

#include <string>
#include <utility>
#include <vector>

#include "matchlet/sequence.hpp"
#include "matchlet/verification.hpp"

namespace matchlet {

/*
 * Meyer wavelets interpolating real data gamma_0, gamma_1, ... on the lattice
 * 1/2 + 3k.
 *
 * The bell profile h = cos(theta) is the even cosine series
 *
 *     h(xi) = sum_n h^(n) cos(3 n xi),
 *
 * whose coefficients solve (-1)^k h^(k) + 2 h^(2k) = 3 sqrt2 gamma_k with the
 * odd coefficients fixed by a convergent alternating dyadic sum. Every
 * sequence argument below must be real and vanish for negative indices.
 */

/// Default truncation index for decaying data.
inline constexpr long kDefaultMeyerTruncation = 1024;

/*
 * Left-hand sides of the three admissibility conditions:
 *
 *   lhs1 = sqrt2 g0 + sqrt2 sum_{k,q} (1 + 4 (-1)^{q-1} 2^q) g_{2^q(2k+1)}      (target 1)
 *   lhs2 = sqrt2 g0 + sqrt2 sum_{k,q} (1 - 2 (-1)^{q-1} 2^q) g_{2^q(2k+1)}      (target sqrt2/2)
 *   lhs3 = sqrt2 |g0| + 3 sqrt2 sum_{k,p} |sum_q (-1)^q 2^q g_{2^{q+p}(2k+1)}|  (at most 1)
 *
 * Decaying data are summed up to `truncation_index`; the tails are bounded
 * through the decay certificate and widen the pass windows.
 */
struct AdmissibilityReport {
    double lhs1 = 0.0;
    double lhs2 = 0.0;
    double lhs3 = 0.0;
    double residual1 = 0.0;  // lhs1 - 1
    double residual2 = 0.0;  // lhs2 - sqrt2/2
    double slack3 = 0.0;     // 1 - lhs3
    double tail1 = 0.0;
    double tail2 = 0.0;
    double tail3 = 0.0;
    double tolerance = 0.0;
    long truncation_index = 0;
    bool pass1 = false;
    bool pass2 = false;
    bool pass3 = false;

    bool passed() const { return pass1 && pass2 && pass3; }
};

AdmissibilityReport check_admissibility(const DataSequence& gamma, double tolerance = 1e-10,
                                        long truncation = kDefaultMeyerTruncation);

/// Cosine coefficients h^(0..n_max) of the bell profile.
struct BellCoefficients {
    std::vector<double> coefficients;
    std::vector<double> error_bounds;  // certified truncation of each dyadic sum
    double abs_tail_bound = 0.0;       // sum_{n > n_max} |h^(n)|
    double derivative_tail_bound = 0.0;  // sum_{n > n_max} n |h^(n)|
    double max_recurrence_residual = 0.0;

    long n_max() const { return static_cast<long>(coefficients.size()) - 1; }
    double operator[](long n) const;
    /// sum_n |h^(n)| over the stored coefficients.
    double abs_sum() const;
};

/*
 * h^(0) = sqrt2 gamma_0; for n = 2^p (2k+1),
 *   h^(n) = -3 sqrt2 sum_q (-1)^q 2^q gamma_{2^q n}   (p = 0),
 *   h^(n) =  3 sqrt2 sum_q (-1)^q 2^q gamma_{2^q n}   (p >= 1).
 * Finite data are never truncated: n_max grows to cover their last index.
 */
BellCoefficients solve_h_coefficients(const DataSequence& gamma, long n_max = kDefaultMeyerTruncation);

/// max_{0 <= k <= n_max/2} |(-1)^k h^(k) + 2 h^(2k) - 3 sqrt2 gamma_k|.
double recurrence_residual(const BellCoefficients& bell, const DataSequence& gamma);

double eval_h(const BellCoefficients& bell, double xi);
/// -3 sum_n n h^(n) sin(3 n xi), the term-by-term derivative.
double eval_h_derivative(const BellCoefficients& bell, double xi);

struct MeyerOptions {
    double bound_tolerance = 1e-12;     // max |h| <= 1 + this on the grid
    double identity_tolerance = 1e-10;  // h(0) = 1, h(pi/3) = sqrt2/2
    int grid_density = 4096;
    QuadratureSpec quadrature{};
};

/*
 * Assembled Meyer system. theta is never formed: with c = h and
 * s = sgn(u) sqrt(1 - h(u)^2) on [-pi/3, pi/3],
 *
 *   [2pi/3, 4pi/3], u = |xi| - pi:     cos lambda = (c - s)/sqrt2, sin lambda = (c + s)/sqrt2
 *   [4pi/3, 8pi/3], v = |xi|/2 - pi:   cos lambda = (c + s)/sqrt2, sin lambda = (c - s)/sqrt2
 *
 * and lambda = 0 elsewhere. phi^ = cos lambda on |xi| <= 4pi/3,
 * psi^ = e^{-i xi/2} sin lambda.
 */
class MeyerWaveletModel {
public:
    const BellCoefficients& bell() const { return bell_; }
    const MeyerOptions& options() const { return options_; }
    double grid_max_abs_h() const { return grid_max_abs_h_; }
    double grid_argmax_abs_h() const { return grid_argmax_abs_h_; }

    double h(double xi) const { return eval_h(bell_, xi); }
    double sine_part(double u) const;
    double cos_lambda(double xi) const;
    double sin_lambda(double xi) const;
    double scaling_hat(double xi) const;
    cplx wavelet_hat(double xi) const;
    /// m(xi) = phi^(2 xi) on [-pi, pi), extended 2pi-periodically.
    double mask(double xi) const;

    FrequencyFunction scaling_function() const;
    FrequencyFunction wavelet_function() const;

    /// (1/pi) int_{2pi/3}^{8pi/3} cos((t - 1/2) xi) sin lambda(xi) d xi.
    Integral<double> psi_detailed(double t) const;
    /// (1/(pi sqrt2)) int_{-pi/3}^{pi/3} ((-1)^k cos 3k xi + 2 cos 6k xi) h(xi) d xi.
    Integral<double> lattice_detailed(long k) const;
    /// Same value from cosine orthogonality: sqrt2 h^(0) for k = 0,
    /// ((-1)^k h^(k) + 2 h^(2k)) / (3 sqrt2) for k >= 1.
    double lattice_series(long k) const;

private:
    friend MeyerWaveletModel build_meyer(BellCoefficients, const MeyerOptions&);
    MeyerWaveletModel() = default;

    BellCoefficients bell_;
    MeyerOptions options_;
    double grid_max_abs_h_ = 0.0;
    double grid_argmax_abs_h_ = 0.0;
};

/// Throws DesignRejected when |h| > 1 on the grid or h(0), h(pi/3) miss their values.
MeyerWaveletModel build_meyer(BellCoefficients bell, const MeyerOptions& options = {});

double eval_psi_time(const MeyerWaveletModel& model, double t);
double eval_lattice(const MeyerWaveletModel& model, long k);

struct FeasibleProjection {
    DataSequence sequence;
    AdmissibilityReport report;
    double max_adjustment = 0.0;
    std::vector<std::string> warnings;
};

/// Solves the first two admissibility conditions exactly for the two free entries.
FeasibleProjection project_feasible(const DataSequence& desired, std::pair<long, long> free_indices,
                                    double tolerance = 1e-10, long truncation = kDefaultMeyerTruncation);

struct MeyerDesignOptions {
    double admissibility_tolerance = 1e-10;
    long truncation = kDefaultMeyerTruncation;
    MeyerOptions model{};
};

struct MeyerDesign {
    DataSequence gamma;
    AdmissibilityReport admissibility;
    MeyerWaveletModel model;
    bool grid_admitted = false;  // the sufficient bound lhs3 <= 1 failed, the grid bound held
};

/// Full pipeline; throws DesignRejected when the first two conditions fail or |h| > 1.
MeyerDesign design_meyer(const DataSequence& gamma, const MeyerDesignOptions& options = {});

/// Throws InvalidInput unless gamma is real and vanishes for negative indices.
void require_meyer_data(const DataSequence& gamma);

}  // namespace matchlet

#endif  // MATCHLET_MEYER_HPP
