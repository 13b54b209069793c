#ifndef MATCHLET_MATCHED_RIESZ_HPP
#define MATCHLET_MATCHED_RIESZ_HPP

#include <memory>
#include <vector>

#include "matchlet/cardinal.hpp"
#include "matchlet/sequence_analysis.hpp"

namespace matchlet {

struct MatchedOptions {
    double positivity_tolerance = 1e-10;
    double truncation_tolerance = 1e-12;
    int grid_density = 4096;
    QuadratureSpec quadrature{};
};

/*
 * Wavelet interpolating gamma on the half-integer lattice:
 *
 *     psi(x) = sum_k gamma_k psi^I(x - k),   psi(k + 1/2) = gamma_k,
 *     psi^(xi) = Gamma(-xi) psi^I^(xi).
 *
 * Its integer shifts form a Riesz system with the bounds of Gamma.
 * Immutable after design_matched.
 */
class MatchedWavelet {
public:
    const DataSequence& gamma() const { return gamma_; }
    const SymbolPolynomial& symbol() const { return symbol_; }
    const FrameBounds& bounds() const { return bounds_; }
    const CardinalModel& cardinal() const { return *cardinal_; }
    const MatchedOptions& options() const { return options_; }

    cplx transform(double xi) const;
    FrequencyFunction frequency_function() const;

    /// (1/2pi) int psi^(xi) e^{i xi t} d xi by panel quadrature.
    Integral<cplx> eval_time_detailed(double t) const;
    cplx eval_time(double t) const { return eval_time_detailed(t).value; }
    /// Direct shift series sum_k gamma_k psi^I(t - k) over the stored coefficients.
    cplx eval_series(double t) const;

private:
    friend MatchedWavelet design_matched(const DataSequence&, const MatchedOptions&,
                                         std::shared_ptr<const CardinalModel>);
    MatchedWavelet() = default;

    DataSequence gamma_;  // finite; truncated when the input decays
    SymbolPolynomial symbol_;
    FrameBounds bounds_;
    std::shared_ptr<const CardinalModel> cardinal_;
    MatchedOptions options_;
};

/// Throws DesignRejected when the symbol's lower bound is not positive.
MatchedWavelet design_matched(const DataSequence& gamma, const MatchedOptions& options = {},
                              std::shared_ptr<const CardinalModel> cardinal = default_cardinal());

struct LatticeResidual {
    long index = 0;
    cplx value{};
    cplx target{};
    double residual = 0.0;
};

struct InterpolationReport {
    std::vector<LatticeResidual> points;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Residuals |psi(n + 1/2) - gamma_n| for |n| <= K.
InterpolationReport verify_interpolation(const MatchedWavelet& psi, long K, double tolerance);

/// sum_k |psi^(xi + 2 pi k)|^2.
double frame_function(const MatchedWavelet& psi, double xi);

struct GramSpectrum {
    std::vector<double> eigenvalues;  // ascending
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    double hermitian_defect = 0.0;
    double toeplitz_defect = 0.0;
    double quadrature_error = 0.0;

    bool inside(double lo, double hi) const { return min_eigenvalue >= lo && max_eigenvalue <= hi; }
};

/// Eigenvalues of the (2K+1) x (2K+1) Gram matrix of the integer shifts.
GramSpectrum gram_eigen_check(const MatchedWavelet& psi, int K);

struct ReconstructionReport {
    int half_width = 0;
    double max_residual = 0.0;  // sup over the t-grid
    std::vector<double> grid;
    std::vector<double> residuals;
};

/// sup_t |sum_{|k|<=M} beta_k psi(t - k) - psi^I(t)| on an equispaced grid of [t_lo, t_hi].
ReconstructionReport reconstruct_cardinal(const MatchedWavelet& psi, int half_width, double t_lo = -3.0,
                                          double t_hi = 3.0, int points = 61);

}  // namespace matchlet

#endif  // MATCHLET_MATCHED_RIESZ_HPP
