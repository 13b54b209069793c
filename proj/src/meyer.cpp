#include "matchlet/meyer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace matchlet {

namespace {

constexpr double kThirdPi = kPi / 3.0;
constexpr long kIndexCeiling = 1L << 60;

long effective_truncation(const DataSequence& gamma, long truncation) {
    if (gamma.is_finite()) return std::max(gamma.is_zero() ? 0L : gamma.last_index(), 0L);
    if (truncation < 1) throw InvalidInput("truncation index must be positive");
    return std::max(truncation, gamma.values().empty() ? 0L : gamma.last_index());
}

double value(const DataSequence& gamma, long k) { return gamma[k].real(); }

// (-1)^{q-1}
double sign_q_minus_1(int q) { return (q % 2 == 1) ? 1.0 : -1.0; }
// (-1)^q
double sign_q(int q) { return (q % 2 == 0) ? 1.0 : -1.0; }

struct DyadicSum {
    double value = 0.0;
    double error = 0.0;
};

// sum_{q >= 0} (-1)^q 2^q gamma_{2^q n}; finite data sum exactly, decaying data
// sum until the certified remainder is negligible.
DyadicSum alternating_dyadic_sum(const DataSequence& gamma, long n) {
    DyadicSum out;
    if (gamma.is_finite()) {
        const long last = gamma.is_zero() ? -1 : gamma.last_index();
        double weight = 1.0;
        for (int q = 0; (n << q) <= last; ++q) {
            out.value += sign_q(q) * weight * value(gamma, n << q);
            weight *= 2.0;
            if ((n << q) > kIndexCeiling / 2) break;
        }
        return out;
    }
    const DecayCertificate& cert = *gamma.certificate();
    const long head_last = gamma.values().empty() ? 0 : gamma.last_index();
    const double ratio = std::pow(2.0, -(1.0 + cert.epsilon));
    const double geometric = 1.0 / (1.0 - ratio);
    double weight = 1.0;
    for (int q = 0;; ++q) {
        const long idx = n << q;
        out.value += sign_q(q) * weight * value(gamma, idx);
        weight *= 2.0;
        const long next = idx << 1;
        if (next > kIndexCeiling || next <= 0) {
            out.error = cert.bound(next > 0 ? next : kIndexCeiling) * weight * geometric;
            break;
        }
        if (next > head_last) {
            // remainder: sum_{r >= q+1} 2^r C (2^r n)^{-2-eps}
            const double rem = weight * cert.bound(next) * geometric;
            if (rem <= 1e-18 * std::max(1e-300, std::abs(out.value)) || rem < 1e-300) {
                out.error = rem;
                break;
            }
        }
    }
    return out;
}

}  // namespace

void require_meyer_data(const DataSequence& gamma) {
    if (!gamma.is_zero() && gamma.first_index() < 0) {
        throw InvalidInput("Meyer data are indexed by k >= 0");
    }
    if (!gamma.is_finite() && gamma.two_sided()) {
        throw InvalidInput("Meyer data must be one-sided (k >= 0)");
    }
    if (!gamma.is_real()) throw InvalidInput("Meyer data must be real");
}

AdmissibilityReport check_admissibility(const DataSequence& gamma, double tolerance, long truncation) {
    require_meyer_data(gamma);
    const long N = effective_truncation(gamma, truncation);
    AdmissibilityReport r;
    r.tolerance = tolerance;
    r.truncation_index = N;

    const double g0 = value(gamma, 0);
    double sum1 = 0.0;
    double sum2 = 0.0;
    for (long m = 1; m <= N; m += 2) {
        double pow2 = 1.0;
        for (int q = 0; (m << q) <= N; ++q) {
            const double g = value(gamma, m << q);
            sum1 += (1.0 + 4.0 * sign_q_minus_1(q) * pow2) * g;
            sum2 += (1.0 - 2.0 * sign_q_minus_1(q) * pow2) * g;
            pow2 *= 2.0;
        }
    }
    r.lhs1 = kSqrt2 * g0 + kSqrt2 * sum1;
    r.lhs2 = kSqrt2 * g0 + kSqrt2 * sum2;

    double sum3 = 0.0;
    for (long m = 1; m <= N; m += 2) {
        for (int p = 0; (m << p) <= N; ++p) {
            double inner = 0.0;
            double pow2 = 1.0;
            for (int q = 0; (m << (p + q)) <= N; ++q) {
                inner += sign_q(q) * pow2 * value(gamma, m << (p + q));
                pow2 *= 2.0;
            }
            sum3 += std::abs(inner);
        }
    }
    r.lhs3 = kSqrt2 * std::abs(g0) + 3.0 * kSqrt2 * sum3;

    if (!gamma.is_finite()) {
        const DecayCertificate& cert = *gamma.certificate();
        const double plain = power_tail_bound(cert, N);
        const double dyadic = dyadic_tail_bound(cert, N);
        r.tail1 = kSqrt2 * (plain + 4.0 * dyadic);
        r.tail2 = kSqrt2 * (plain + 2.0 * dyadic);
        r.tail3 = 6.0 * kSqrt2 * dyadic;
    }
    r.residual1 = r.lhs1 - 1.0;
    r.residual2 = r.lhs2 - kSqrt2 / 2.0;
    r.slack3 = 1.0 - r.lhs3;
    r.pass1 = std::abs(r.residual1) <= tolerance + r.tail1;
    r.pass2 = std::abs(r.residual2) <= tolerance + r.tail2;
    r.pass3 = r.lhs3 + r.tail3 <= 1.0 + tolerance;
    return r;
}

double BellCoefficients::operator[](long n) const {
    if (n < 0 || n > n_max()) return 0.0;
    return coefficients[static_cast<std::size_t>(n)];
}

double BellCoefficients::abs_sum() const {
    double s = 0.0;
    for (double c : coefficients) s += std::abs(c);
    return s;
}

BellCoefficients solve_h_coefficients(const DataSequence& gamma, long n_max) {
    require_meyer_data(gamma);
    if (n_max < 1) throw InvalidInput("n_max must be at least 1");
    if (gamma.is_finite() && !gamma.is_zero()) n_max = std::max(n_max, gamma.last_index());
    if (!gamma.is_finite() && !gamma.values().empty()) n_max = std::max(n_max, gamma.last_index());

    BellCoefficients bell;
    bell.coefficients.assign(static_cast<std::size_t>(n_max + 1), 0.0);
    bell.error_bounds.assign(static_cast<std::size_t>(n_max + 1), 0.0);
    bell.coefficients[0] = kSqrt2 * value(gamma, 0);
    for (long n = 1; n <= n_max; ++n) {
        const DyadicSum s = alternating_dyadic_sum(gamma, n);
        const double sign = (n % 2 == 1) ? -1.0 : 1.0;
        bell.coefficients[static_cast<std::size_t>(n)] = sign * 3.0 * kSqrt2 * s.value;
        bell.error_bounds[static_cast<std::size_t>(n)] = 3.0 * kSqrt2 * s.error;
    }
    if (!gamma.is_finite()) {
        const DecayCertificate& cert = *gamma.certificate();
        bell.abs_tail_bound = 6.0 * kSqrt2 * dyadic_tail_bound(cert, n_max);
        bell.derivative_tail_bound = 3.0 * kSqrt2 * weighted_derivative_tail_bound(cert, n_max);
    }
    bell.max_recurrence_residual = recurrence_residual(bell, gamma);
    return bell;
}

double recurrence_residual(const BellCoefficients& bell, const DataSequence& gamma) {
    double worst = 0.0;
    for (long k = 0; 2 * k <= bell.n_max(); ++k) {
        const double lhs = sign_q(static_cast<int>(k % 2)) * bell[k] + 2.0 * bell[2 * k];
        worst = std::max(worst, std::abs(lhs - 3.0 * kSqrt2 * value(gamma, k)));
    }
    return worst;
}

double eval_h(const BellCoefficients& bell, double xi) {
    double s = 0.0;
    for (std::size_t n = 0; n < bell.coefficients.size(); ++n) {
        const double c = bell.coefficients[n];
        if (c != 0.0) s += c * std::cos(3.0 * static_cast<double>(n) * xi);
    }
    return s;
}

double eval_h_derivative(const BellCoefficients& bell, double xi) {
    double s = 0.0;
    for (std::size_t n = 1; n < bell.coefficients.size(); ++n) {
        const double c = bell.coefficients[n];
        const double nn = static_cast<double>(n);
        if (c != 0.0) s += nn * c * std::sin(3.0 * nn * xi);
    }
    return -3.0 * s;
}

double MeyerWaveletModel::sine_part(double u) const {
    const double c = h(u);
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    return u < 0.0 ? -s : (u > 0.0 ? s : 0.0);
}

double MeyerWaveletModel::cos_lambda(double xi) const {
    const double a = std::abs(xi);
    if (a >= 2.0 * kThirdPi && a <= 4.0 * kThirdPi) {
        const double u = a - kPi;
        return (h(u) - sine_part(u)) / kSqrt2;
    }
    if (a > 4.0 * kThirdPi && a <= 8.0 * kThirdPi) {
        const double v = 0.5 * a - kPi;
        return (h(v) + sine_part(v)) / kSqrt2;
    }
    return 1.0;
}

double MeyerWaveletModel::sin_lambda(double xi) const {
    const double a = std::abs(xi);
    if (a >= 2.0 * kThirdPi && a <= 4.0 * kThirdPi) {
        const double u = a - kPi;
        return (h(u) + sine_part(u)) / kSqrt2;
    }
    if (a > 4.0 * kThirdPi && a <= 8.0 * kThirdPi) {
        const double v = 0.5 * a - kPi;
        return (h(v) - sine_part(v)) / kSqrt2;
    }
    return 0.0;
}

double MeyerWaveletModel::scaling_hat(double xi) const {
    return std::abs(xi) <= 4.0 * kThirdPi ? cos_lambda(xi) : 0.0;
}

cplx MeyerWaveletModel::wavelet_hat(double xi) const {
    const double s = sin_lambda(xi);
    if (s == 0.0) return {};
    return std::polar(1.0, -0.5 * xi) * s;
}

double MeyerWaveletModel::mask(double xi) const {
    double r = std::fmod(xi + kPi, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return scaling_hat(2.0 * (r - kPi));
}

FrequencyFunction MeyerWaveletModel::scaling_function() const {
    return {[this](double xi) { return cplx(scaling_hat(xi)); },
            {0.0, 2.0 * kThirdPi, kPi, 4.0 * kThirdPi}};
}

FrequencyFunction MeyerWaveletModel::wavelet_function() const {
    return {[this](double xi) { return wavelet_hat(xi); },
            {2.0 * kThirdPi, kPi, 4.0 * kThirdPi, kTwoPi, 8.0 * kThirdPi}};
}

Integral<double> MeyerWaveletModel::psi_detailed(double t) const {
    static const std::vector<double> bp{2.0 * kThirdPi, kPi, 4.0 * kThirdPi, kTwoPi, 8.0 * kThirdPi};
    const double shift = t - 0.5;
    auto r = integrate_pieces_real([&](double xi) { return std::cos(shift * xi) * sin_lambda(xi); }, bp,
                                   options_.quadrature);
    r.value /= kPi;
    r.error /= kPi;
    return r;
}

Integral<double> MeyerWaveletModel::lattice_detailed(long k) const {
    if (k < 0) throw InvalidInput("lattice index must be nonnegative");
    static const std::vector<double> bp{-kThirdPi, 0.0, kThirdPi};
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const double kk = static_cast<double>(k);
    auto r = integrate_pieces_real(
        [&](double xi) { return (sign * std::cos(3.0 * kk * xi) + 2.0 * std::cos(6.0 * kk * xi)) * h(xi); }, bp,
        options_.quadrature);
    r.value /= kPi * kSqrt2;
    r.error /= kPi * kSqrt2;
    return r;
}

double MeyerWaveletModel::lattice_series(long k) const {
    if (k < 0) throw InvalidInput("lattice index must be nonnegative");
    if (k == 0) return kSqrt2 * bell_[0];
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return (sign * bell_[k] + 2.0 * bell_[2 * k]) / (3.0 * kSqrt2);
}

MeyerWaveletModel build_meyer(BellCoefficients bell, const MeyerOptions& options) {
    options.quadrature.validate();
    if (bell.coefficients.empty()) throw InvalidInput("bell coefficients are empty");
    if (options.grid_density < 2) throw InvalidInput("grid density must be at least 2");

    MeyerWaveletModel m;
    m.bell_ = std::move(bell);
    m.options_ = options;

    // h is even with period 2pi/3, so [0, pi/3] covers every value.
    for (int i = 0; i <= options.grid_density; ++i) {
        const double xi = kThirdPi * i / options.grid_density;
        const double a = std::abs(m.h(xi));
        if (a > m.grid_max_abs_h_) {
            m.grid_max_abs_h_ = a;
            m.grid_argmax_abs_h_ = xi;
        }
    }
    const double tail = m.bell_.abs_tail_bound;
    // Reject only a certified violation; the truncated tail may hide up to `tail`.
    if (m.grid_max_abs_h_ - tail > 1.0 + options.bound_tolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "|h| exceeds 1: |h(" << m.grid_argmax_abs_h_ << ")| = " << m.grid_max_abs_h_;
        throw DesignRejected(msg.str());
    }
    const double h0 = m.h(0.0);
    const double h3 = m.h(kThirdPi);
    if (std::abs(h0 - 1.0) > options.identity_tolerance + tail) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "h(0) = " << h0 << " differs from 1";
        throw DesignRejected(msg.str());
    }
    if (std::abs(h3 - kSqrt2 / 2.0) > options.identity_tolerance + tail) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "h(pi/3) = " << h3 << " differs from sqrt2/2";
        throw DesignRejected(msg.str());
    }
    return m;
}

double eval_psi_time(const MeyerWaveletModel& model, double t) { return model.psi_detailed(t).value; }

double eval_lattice(const MeyerWaveletModel& model, long k) { return model.lattice_detailed(k).value; }

FeasibleProjection project_feasible(const DataSequence& desired, std::pair<long, long> free_indices,
                                    double tolerance, long truncation) {
    require_meyer_data(desired);
    const auto [i, j] = free_indices;
    if (i < 0 || j < 0) throw InvalidInput("free indices must be nonnegative");
    if (i == j) throw InvalidInput("free indices must differ");
    const long N = effective_truncation(desired, truncation);
    if (!desired.is_finite() && (i > N || j > N)) throw InvalidInput("free indices exceed the truncation index");

    // Weights of gamma_n in lhs1 and lhs2.
    const auto weights = [](long n) -> std::pair<double, double> {
        if (n == 0) return {kSqrt2, kSqrt2};
        const int q = two_adic_valuation(n);
        const double p2 = std::ldexp(1.0, q);
        return {kSqrt2 * (1.0 + 4.0 * sign_q_minus_1(q) * p2), kSqrt2 * (1.0 - 2.0 * sign_q_minus_1(q) * p2)};
    };
    const auto [a1i, a2i] = weights(i);
    const auto [a1j, a2j] = weights(j);
    const double det = a1i * a2j - a1j * a2i;
    const double scale = std::max({std::abs(a1i * a2j), std::abs(a1j * a2i), 1.0});
    if (std::abs(det) <= 1e-12 * scale) {
        std::ostringstream msg;
        msg << "free indices (" << i << ", " << j << ") give a singular system: both have 2-adic valuation "
            << (i == 0 ? -1 : two_adic_valuation(i))
            << "; choose indices with different powers of two (for example 0 and 1)";
        throw DesignRejected(msg.str());
    }

    const DataSequence cleared = desired.with_value(i, 0.0).with_value(j, 0.0);
    const AdmissibilityReport rest = check_admissibility(cleared, tolerance, N);
    const double r1 = 1.0 - rest.lhs1;
    const double r2 = kSqrt2 / 2.0 - rest.lhs2;
    const double xi_val = (r1 * a2j - a1j * r2) / det;
    const double xj_val = (a1i * r2 - r1 * a2i) / det;

    FeasibleProjection out;
    out.sequence = desired.with_value(i, xi_val).with_value(j, xj_val);
    out.report = check_admissibility(out.sequence, tolerance, N);
    out.max_adjustment = std::max(std::abs(xi_val - value(desired, i)), std::abs(xj_val - value(desired, j)));
    if (!out.report.pass3) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "sufficient bound fails: lhs3 = " << out.report.lhs3
            << " > 1; the design may still pass the direct |h| <= 1 grid check";
        out.warnings.push_back(msg.str());
    }
    return out;
}

MeyerDesign design_meyer(const DataSequence& gamma, const MeyerDesignOptions& options) {
    AdmissibilityReport adm = check_admissibility(gamma, options.admissibility_tolerance, options.truncation);
    if (!adm.pass1 || !adm.pass2) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "inadmissible data: lhs1 = " << adm.lhs1 << " (target 1), lhs2 = " << adm.lhs2
            << " (target sqrt2/2); use project_feasible to adjust two entries";
        throw DesignRejected(msg.str());
    }
    BellCoefficients bell = solve_h_coefficients(gamma, options.truncation);
    MeyerWaveletModel model = build_meyer(std::move(bell), options.model);
    const bool grid_only = !adm.pass3;
    return MeyerDesign{gamma, adm, std::move(model), grid_only};
}

}  // namespace matchlet
