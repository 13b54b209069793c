#ifndef MATCHLET_TESTS_ORACLES_HPP
#define MATCHLET_TESTS_ORACLES_HPP

// Independent reference computations for the tests. Nothing here calls the
// library's quadrature or series code.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline const double sqrt2 = std::sqrt(2.0);

// Frozen values of the worked cases.
namespace frozen {
inline const double matched_lower = 0.25;
inline const double matched_upper = 2.25;
inline const double perturbed_lower = (1.0 - 1.0 / 1.05) * (1.0 - 1.0 / 1.05);  // 2.2675736961451248e-3
inline const double perturbed_gamma1 = 1.0 / 1.05;
inline const double meyer_gamma0 = (1.0 + std::sqrt(2.0)) / 4.0;
inline const double meyer_gamma1 = (1.0 - std::sqrt(2.0)) / 12.0;
inline const double meyer_h0 = (2.0 + std::sqrt(2.0)) / 4.0;
inline const double meyer_h1 = (2.0 - std::sqrt(2.0)) / 4.0;
inline const double meyer_psi_half = (1.0 + std::sqrt(2.0)) / 2.0;  // psi(1/2) = 2 gamma_0
inline const double feasible02_x2 = (1.0 / std::sqrt(2.0) - 0.5) / 12.0;
inline const double feasible02_x0 = 0.5 + 3.0 * feasible02_x2;
}  // namespace frozen

inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

inline double sinc_pi(double t) { return t == 0.0 ? 1.0 : std::sin(pi * t) / (pi * t); }

inline double shannon_wavelet(double t) {
    const double tau = t - 0.5;
    if (tau == 0.0) return 1.0;
    return (std::sin(2.0 * pi * tau) - std::sin(pi * tau)) / (pi * tau);
}

inline std::complex<double> symbol(const std::vector<double>& g, long first, double xi) {
    std::complex<double> s{};
    for (std::size_t i = 0; i < g.size(); ++i) s += g[i] * std::polar(1.0, (first + static_cast<long>(i)) * xi);
    return s;
}

inline double h_series(const std::vector<double>& hhat, double xi) {
    double s = 0.0;
    for (std::size_t n = 0; n < hhat.size(); ++n) s += hhat[n] * std::cos(3.0 * static_cast<double>(n) * xi);
    return s;
}

// sin lambda(xi) for xi > 0 written from the bell construction with theta = acos h.
inline double meyer_sin_lambda(const std::vector<double>& hhat, double xi) {
    auto theta = [&](double u) {
        const double h = std::max(-1.0, std::min(1.0, h_series(hhat, u)));
        const double th = std::acos(h);
        return u < 0.0 ? -th : th;
    };
    if (xi >= 2.0 * pi / 3.0 && xi <= 4.0 * pi / 3.0) return std::sin(pi / 4.0 + theta(xi - pi));
    if (xi > 4.0 * pi / 3.0 && xi <= 8.0 * pi / 3.0) return std::cos(pi / 4.0 + theta(xi / 2.0 - pi));
    return 0.0;
}

inline double meyer_psi(const std::vector<double>& hhat, double t, int n = 20000) {
    auto f = [&](double xi) { return std::cos((t - 0.5) * xi) * meyer_sin_lambda(hhat, xi); };
    const double a = 2.0 * pi / 3.0, b = 4.0 * pi / 3.0, c = 8.0 * pi / 3.0;
    return (simpson(f, a, b, n) + simpson(f, b, c, 2 * n)) / pi;
}

inline int valuation(long n) {
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    return v;
}

// Admissibility sums by direct enumeration over n = 2^q (2k+1), 1 <= n <= gamma.size()-1.
inline void admissibility(const std::vector<double>& g, double& lhs1, double& lhs2) {
    lhs1 = lhs2 = sqrt2 * g[0];
    for (std::size_t n = 1; n < g.size(); ++n) {
        const int q = valuation(static_cast<long>(n));
        const double sign = (q % 2 == 1) ? 1.0 : -1.0;  // (-1)^{q-1}
        const double p2 = std::ldexp(1.0, q);
        lhs1 += sqrt2 * (1.0 + 4.0 * sign * p2) * g[n];
        lhs2 += sqrt2 * (1.0 - 2.0 * sign * p2) * g[n];
    }
}

// |h(0) - sqrt2 gamma_0| and |(-1)^k h(k) + 2 h(2k) - 3 sqrt2 gamma_k| for k >= 1, worst case.
inline double recurrence_residual(const std::vector<double>& hhat, const std::vector<double>& g) {
    auto H = [&](std::size_t n) { return n < hhat.size() ? hhat[n] : 0.0; };
    auto G = [&](std::size_t n) { return n < g.size() ? g[n] : 0.0; };
    double worst = std::abs(H(0) - sqrt2 * G(0));
    const std::size_t top = std::max(hhat.size(), g.size());
    for (std::size_t k = 1; k <= top; ++k) {
        const double sign = (k % 2) ? -1.0 : 1.0;
        worst = std::max(worst, std::abs(sign * H(k) + 2.0 * H(2 * k) - 3.0 * sqrt2 * G(k)));
    }
    return worst;
}

}  // namespace oracle

#endif  // MATCHLET_TESTS_ORACLES_HPP
