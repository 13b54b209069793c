#include "matchlet/matched_riesz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace matchlet {

namespace {

std::vector<double> mirrored(const std::vector<double>& bp) {
    std::vector<double> out;
    for (auto it = bp.rbegin(); it != bp.rend(); ++it) out.push_back(-*it);
    return out;
}

}  // namespace

cplx MatchedWavelet::transform(double xi) const {
    const cplx base = cardinal_->wavelet_hat(xi);
    if (base == cplx{}) return {};
    return symbol_(-xi) * base;
}

FrequencyFunction MatchedWavelet::frequency_function() const {
    return {[this](double xi) { return transform(xi); }, cardinal_->wavelet_breakpoints()};
}

Integral<cplx> MatchedWavelet::eval_time_detailed(double t) const {
    const auto integrand = [this, t](double xi) { return transform(xi) * std::polar(1.0, xi * t); };
    const auto bp = cardinal_->wavelet_breakpoints();
    auto pos = integrate_pieces(integrand, bp, options_.quadrature);
    const auto neg = integrate_pieces(integrand, mirrored(bp), options_.quadrature);
    pos.value = (pos.value + neg.value) / kTwoPi;
    pos.error = (pos.error + neg.error) / kTwoPi;
    pos.panels = std::max(pos.panels, neg.panels);
    return pos;
}

cplx MatchedWavelet::eval_series(double t) const {
    cplx sum{};
    const auto& v = gamma_.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        sum += v[i] * cardinal_->wavelet(t - static_cast<double>(gamma_.first_index() + static_cast<long>(i)));
    }
    return sum;
}

MatchedWavelet design_matched(const DataSequence& gamma, const MatchedOptions& options,
                              std::shared_ptr<const CardinalModel> cardinal) {
    if (!cardinal) throw InvalidInput("cardinal model is required");
    options.quadrature.validate();

    MatchedWavelet w;
    w.options_ = options;
    w.cardinal_ = std::move(cardinal);
    w.symbol_ = symbol_from_sequence(gamma, options.truncation_tolerance, options.grid_density);
    w.gamma_ = DataSequence::finite(w.symbol_.first_index(), w.symbol_.coefficients());
    w.bounds_ = compute_frame_bounds(w.symbol_, options.positivity_tolerance);

    if (!w.bounds_.riesz) {
        std::ostringstream msg;
        msg << "not a Riesz sequence: min |Gamma|^2 = " << w.bounds_.lower << " at xi = " << w.bounds_.argmin;
        if (w.gamma_.values().size() >= 2) {
            try {
                const RootSet rs = polynomial_roots(w.symbol_.algebraic_coefficients());
                const CircleCheck cc = unit_circle_check(rs, 1e-6);
                if (!cc.passed) {
                    msg << "; roots on the unit circle:";
                    for (const cplx& r : cc.offenders) msg << " (" << r.real() << (r.imag() < 0 ? "" : "+") << r.imag() << "i)";
                }
            } catch (const RootSolveError&) {
                msg << "; root solve failed";
            }
        }
        msg << ". Move the offending roots off the circle with perturb_roots and redesign.";
        throw DesignRejected(msg.str());
    }
    return w;
}

InterpolationReport verify_interpolation(const MatchedWavelet& psi, long K, double tolerance) {
    InterpolationReport rep;
    rep.tolerance = tolerance;
    for (long n = -K; n <= K; ++n) {
        LatticeResidual p;
        p.index = n;
        p.value = psi.eval_time(static_cast<double>(n) + 0.5);
        p.target = psi.gamma()[n];
        p.residual = std::abs(p.value - p.target);
        rep.max_residual = std::max(rep.max_residual, p.residual);
        rep.points.push_back(p);
    }
    rep.passed = rep.max_residual <= tolerance;
    return rep;
}

double frame_function(const MatchedWavelet& psi, double xi) {
    return periodized_energy(psi.frequency_function(), xi);
}

GramSpectrum gram_eigen_check(const MatchedWavelet& psi, int K) {
    const GramResult g = gram_matrix(psi.frequency_function(), K, 0, 0, psi.options().quadrature);
    GramSpectrum out;
    out.hermitian_defect = hermitian_defect(g.matrix);
    out.toeplitz_defect = toeplitz_defect(g.matrix);
    out.quadrature_error = g.error;
    const Eigen::MatrixXcd herm = 0.5 * (g.matrix + g.matrix.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error("Gram eigenvalue solver did not converge");
    const auto& ev = solver.eigenvalues();
    out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    out.min_eigenvalue = out.eigenvalues.front();
    out.max_eigenvalue = out.eigenvalues.back();
    return out;
}

ReconstructionReport reconstruct_cardinal(const MatchedWavelet& psi, int half_width, double t_lo, double t_hi,
                                          int points) {
    if (points < 2) throw InvalidInput("reconstruction grid needs at least two points");
    const DualCoefficients beta = dual_symbol_coefficients(psi.symbol(), half_width, psi.options().quadrature,
                                                           psi.options().positivity_tolerance);
    ReconstructionReport rep;
    rep.half_width = half_width;
    for (int i = 0; i < points; ++i) {
        const double t = t_lo + (t_hi - t_lo) * i / (points - 1);
        cplx sum{};
        for (long k = -half_width; k <= half_width; ++k) sum += beta[k] * psi.eval_time(t - static_cast<double>(k));
        const double r = std::abs(sum - psi.cardinal().wavelet(t));
        rep.grid.push_back(t);
        rep.residuals.push_back(r);
        rep.max_residual = std::max(rep.max_residual, r);
    }
    return rep;
}

}  // namespace matchlet
