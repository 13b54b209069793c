#include "matchlet/sequence_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "matchlet/verification.hpp"

namespace matchlet {

namespace {

constexpr double kGolden = 0.6180339887498948482;

double wrap_angle(double xi) {
    double r = std::fmod(xi, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

// Golden-section search for a minimum of f on [a, b].
template <class F>
double golden_minimize(const F& f, double a, double b, double width) {
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > width) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? x1 : x2;
}

struct PolyEval {
    cplx value;
    cplx derivative;
    double scale;  // sum |c_j| |z|^j
};

PolyEval horner(std::span<const cplx> c, cplx z) {
    cplx p{};
    cplx dp{};
    double s = 0.0;
    const double az = std::abs(z);
    for (std::size_t j = c.size(); j-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[j];
        s = s * az + std::abs(c[j]);
    }
    return {p, dp, s};
}

struct Factored {
    std::vector<cplx> coeffs;  // ascending, trimmed at both ends
    long first = 0;            // index of coeffs[0] in the data
    RootSet roots;             // roots of the trimmed polynomial (no zero roots)
};

Factored factor_data(const DataSequence& gamma) {
    if (!gamma.is_finite()) throw InvalidInput("root analysis needs finite data");
    Factored out;
    out.coeffs = gamma.values();
    out.first = gamma.first_index();
    if (out.coeffs.size() < 2) throw InvalidInput("degree-0 data: no roots to perturb");
    out.roots = polynomial_roots(out.coeffs);
    return out;
}

std::vector<cplx> moved_roots(const RootSet& rs, double delta, std::vector<std::pair<cplx, cplx>>* moves) {
    std::vector<cplx> out = rs.roots;
    for (cplx& r : out) {
        const double m = std::abs(r);
        if (std::abs(m - 1.0) < delta) {
            const cplx moved = std::polar(1.0 + delta, std::arg(r));
            if (moves) moves->emplace_back(r, moved);
            r = moved;
        }
    }
    return out;
}

}  // namespace

SymbolPolynomial::SymbolPolynomial(long first_index, std::vector<cplx> coefficients, double truncation_error,
                                   int grid_density)
    : first_(first_index),
      coeffs_(std::move(coefficients)),
      truncation_error_(truncation_error),
      grid_density_(grid_density) {
    if (grid_density_ < 8) throw InvalidInput("symbol grid density must be at least 8");
    if (!(truncation_error_ >= 0.0)) throw InvalidInput("truncation error must be nonnegative");
}

cplx SymbolPolynomial::operator()(double xi) const {
    if (coeffs_.empty()) return {};
    const cplx z = std::polar(1.0, xi);
    cplx acc{};
    for (std::size_t j = coeffs_.size(); j-- > 0;) acc = acc * z + coeffs_[j];
    return acc * std::polar(1.0, static_cast<double>(first_) * xi);
}

std::vector<cplx> SymbolPolynomial::algebraic_coefficients() const {
    if (coeffs_.empty()) return {};
    // z^{max(-N1,0)} sum_k gamma_k z^k has lowest power max(N1, 0).
    const long lowest = std::max(first_, 0L);
    std::vector<cplx> out(static_cast<std::size_t>(lowest), cplx{});
    out.insert(out.end(), coeffs_.begin(), coeffs_.end());
    return out;
}

SymbolPolynomial symbol_from_sequence(const DataSequence& gamma, double tolerance, int grid_density) {
    if (gamma.is_finite()) {
        return SymbolPolynomial(gamma.first_index(), gamma.values(), 0.0, grid_density);
    }
    if (!gamma.certificate()) throw InvalidInput("decaying data need a decay certificate");
    const long K = gamma.truncation_index(tolerance);
    const DataSequence head = gamma.truncated(K);
    return SymbolPolynomial(head.first_index(), head.values(), gamma.tail_bound(K), grid_density);
}

FrameBounds compute_frame_bounds(const SymbolPolynomial& symbol, double positivity_tolerance) {
    FrameBounds fb;
    if (symbol.coefficients().empty()) return fb;

    const int n = symbol.grid_density();
    const double step = kTwoPi / n;
    std::vector<double> vals(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = symbol.modulus_squared(step * i);

    const auto at = [&](int i) { return vals[static_cast<std::size_t>((i % n + n) % n)]; };
    const auto imin = static_cast<int>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    const auto imax = static_cast<int>(std::max_element(vals.begin(), vals.end()) - vals.begin());
    fb.lower = vals[static_cast<std::size_t>(imin)];
    fb.argmin = step * imin;
    fb.upper = vals[static_cast<std::size_t>(imax)];
    fb.argmax = step * imax;

    const auto f_min = [&](double x) { return symbol.modulus_squared(x); };
    const auto f_max = [&](double x) { return -symbol.modulus_squared(x); };
    for (int i = 0; i < n; ++i) {
        const double here = at(i);
        const double left = at(i - 1);
        const double right = at(i + 1);
        if (here < left && here <= right) {
            const double x = golden_minimize(f_min, step * (i - 1), step * (i + 1), 1e-12);
            const double v = f_min(x);
            if (v < fb.lower) {
                fb.lower = v;
                fb.argmin = wrap_angle(x);
            }
        }
        if (here > left && here >= right) {
            const double x = golden_minimize(f_max, step * (i - 1), step * (i + 1), 1e-12);
            const double v = -f_max(x);
            if (v > fb.upper) {
                fb.upper = v;
                fb.argmax = wrap_angle(x);
            }
        }
    }

    const double eta = symbol.truncation_error();
    fb.uncertainty = 2.0 * std::sqrt(fb.upper) * eta + eta * eta;
    fb.riesz = fb.lower > positivity_tolerance + fb.uncertainty;
    return fb;
}

std::vector<RootSet::Cluster> RootSet::clusters(double radius) const {
    std::vector<Cluster> out;
    for (const cplx& r : roots) {
        bool merged = false;
        for (Cluster& c : out) {
            if (std::abs(c.root - r) <= radius * std::max(1.0, std::abs(r))) {
                c.root = (c.root * static_cast<double>(c.multiplicity) + r) / static_cast<double>(c.multiplicity + 1);
                ++c.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back({r, 1});
    }
    return out;
}

RootSet polynomial_roots(std::span<const cplx> ascending, double residual_tolerance) {
    std::size_t hi = ascending.size();
    while (hi > 0 && ascending[hi - 1] == cplx{}) --hi;
    std::size_t zeros = 0;
    while (zeros < hi && ascending[zeros] == cplx{}) ++zeros;
    if (hi < 2) {
        throw InvalidInput("polynomial must have degree at least 1");
    }
    const std::span<const cplx> full = ascending.first(hi);
    const std::span<const cplx> core = full.subspan(zeros);
    const auto d = static_cast<Eigen::Index>(core.size() - 1);

    RootSet rs;
    rs.leading = full.back();
    rs.roots.assign(zeros, cplx{});

    if (d >= 1) {
        Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
        for (Eigen::Index i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
        for (Eigen::Index i = 0; i < d; ++i) companion(i, d - 1) = -core[static_cast<std::size_t>(i)] / core.back();
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
        std::vector<cplx> found;
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) found.push_back(solver.eigenvalues()(i));
        if (solver.info() != Eigen::Success) {
            found.insert(found.begin(), rs.roots.begin(), rs.roots.end());
            throw RootSolveError("companion eigenvalue iteration did not converge", std::move(found));
        }
        for (cplx& r : found) {
            PolyEval pe = horner(core, r);
            for (int it = 0; it < 8 && pe.derivative != cplx{}; ++it) {
                const cplx next = r - pe.value / pe.derivative;
                const PolyEval pn = horner(core, next);
                if (!(std::abs(pn.value) < std::abs(pe.value))) break;
                r = next;
                pe = pn;
            }
        }
        rs.roots.insert(rs.roots.end(), found.begin(), found.end());
    }

    for (const cplx& r : rs.roots) {
        const PolyEval pe = horner(full, r);
        const double rel = pe.scale > 0.0 ? std::abs(pe.value) / pe.scale : 0.0;
        rs.max_residual = std::max(rs.max_residual, rel);
    }
    if (!(rs.max_residual <= residual_tolerance)) {
        std::ostringstream msg;
        msg << "root residual " << rs.max_residual << " exceeds tolerance " << residual_tolerance;
        throw RootSolveError(msg.str(), rs.roots);
    }
    rs.min_circle_distance = std::numeric_limits<double>::infinity();
    for (const cplx& r : rs.roots) rs.min_circle_distance = std::min(rs.min_circle_distance, std::abs(std::abs(r) - 1.0));
    return rs;
}

std::vector<cplx> coefficients_from_roots(std::span<const cplx> roots, cplx leading) {
    std::vector<cplx> c{cplx{1.0}};
    for (const cplx& r : roots) {
        std::vector<cplx> next(c.size() + 1, cplx{});
        for (std::size_t j = 0; j < c.size(); ++j) {
            next[j + 1] += c[j];
            next[j] -= r * c[j];
        }
        c = std::move(next);
    }
    for (cplx& v : c) v *= leading;
    return c;
}

CircleCheck unit_circle_check(const RootSet& roots, double margin) {
    CircleCheck out;
    for (const cplx& r : roots.roots) {
        if (!(std::abs(std::abs(r) - 1.0) >= margin)) out.offenders.push_back(r);
    }
    out.passed = out.offenders.empty();
    return out;
}

std::vector<std::pair<cplx, cplx>> perturbation_moves(const DataSequence& gamma, double delta) {
    if (!(delta > 0.0)) throw InvalidInput("perturbation margin must be positive");
    const Factored f = factor_data(gamma);
    std::vector<std::pair<cplx, cplx>> moves;
    moved_roots(f.roots, delta, &moves);
    return moves;
}

DataSequence perturb_roots(const DataSequence& gamma, double delta) {
    if (!(delta > 0.0)) throw InvalidInput("perturbation margin must be positive");
    const Factored f = factor_data(gamma);
    std::vector<std::pair<cplx, cplx>> moves;
    const std::vector<cplx> roots = moved_roots(f.roots, delta, &moves);
    if (moves.empty()) return gamma;

    std::vector<cplx> rebuilt = coefficients_from_roots(roots, cplx{1.0});
    const cplx scale = f.coeffs.front() / rebuilt.front();
    for (cplx& c : rebuilt) c *= scale;
    rebuilt.front() = f.coeffs.front();
    if (gamma.is_real()) {
        for (cplx& c : rebuilt) c = cplx(c.real(), 0.0);
    }
    return DataSequence::finite(f.first, std::move(rebuilt));
}

cplx DualCoefficients::operator[](long k) const {
    const long i = k - first_index;
    if (i < 0 || i >= static_cast<long>(beta.size())) return {};
    return beta[static_cast<std::size_t>(i)];
}

DualCoefficients dual_symbol_coefficients(const SymbolPolynomial& symbol, int half_width,
                                          const QuadratureSpec& spec, double positivity_tolerance) {
    if (half_width < 0) throw InvalidInput("coefficient count must be nonnegative");
    const FrameBounds fb = compute_frame_bounds(symbol, positivity_tolerance);
    if (!fb.riesz) {
        std::ostringstream msg;
        msg << "1/Gamma is unbounded: min |Gamma|^2 = " << fb.lower << " at xi = " << fb.argmin;
        throw DesignRejected(msg.str());
    }
    DualCoefficients out;
    out.first_index = -half_width;
    for (long k = -half_width; k <= half_width; ++k) {
        const auto integrand = [&](double xi) { return std::polar(1.0, -static_cast<double>(k) * xi) / symbol(xi); };
        const auto r = integrate(integrand, 0.0, kTwoPi, spec);
        out.beta.push_back(r.value / kTwoPi);
        out.quadrature_error = std::max(out.quadrature_error, r.error / kTwoPi);
    }
    for (double xi : uniform_grid(0.0, kTwoPi, 1024)) {
        cplx series{};
        for (long k = -half_width; k <= half_width; ++k) series += out[k] * std::polar(1.0, static_cast<double>(k) * xi);
        out.residual = std::max(out.residual, std::abs(symbol(xi) * series - 1.0));
    }
    return out;
}

}  // namespace matchlet
