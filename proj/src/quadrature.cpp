#include "matchlet/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

namespace matchlet {

namespace {

constexpr std::array<int, 4> kNodeCounts = {16, 20, 32, 64};

// Reference rule on [-1, 1], expanded from Boost's half tables.
template <unsigned N>
std::vector<Node> reference_rule() {
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& abscissa = G::abscissa();
    const auto& weights = G::weights();
    std::vector<Node> out;
    out.reserve(N);
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
        if (abscissa[i] == 0.0) {
            out.push_back({0.0, weights[i]});
        } else {
            out.push_back({-abscissa[i], weights[i]});
            out.push_back({abscissa[i], weights[i]});
        }
    }
    std::sort(out.begin(), out.end(), [](const Node& l, const Node& r) { return l.x < r.x; });
    return out;
}

const std::vector<Node>& reference(int n) {
    static const std::vector<Node> r16 = reference_rule<16>();
    static const std::vector<Node> r20 = reference_rule<20>();
    static const std::vector<Node> r32 = reference_rule<32>();
    static const std::vector<Node> r64 = reference_rule<64>();
    switch (n) {
        case 16: return r16;
        case 20: return r20;
        case 32: return r32;
        case 64: return r64;
        default: break;
    }
    throw InvalidInput("unsupported Gauss-Legendre order " + std::to_string(n));
}

template <class T, class F>
T apply_rule(const F& f, double a, double b, int panels, int nodes) {
    const auto& ref = reference(nodes);
    const double width = (b - a) / panels;
    T sum{};
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * width;
        const double mid = lo + 0.5 * width;
        T panel{};
        for (const Node& n : ref) panel += n.w * f(mid + 0.5 * width * n.x);
        sum += 0.5 * width * panel;
    }
    return sum;
}

template <class T, class F>
Integral<T> integrate_impl(const F& f, double a, double b, const QuadratureSpec& spec) {
    spec.validate();
    if (!(std::isfinite(a) && std::isfinite(b))) throw InvalidInput("integration limits must be finite");
    if (a == b) return {T{}, 0.0, spec.panels_per_band};

    int panels = spec.panels_per_band;
    T coarse = apply_rule<T>(f, a, b, panels, spec.nodes_per_panel);
    for (int level = 0; level <= spec.max_refinements; ++level) {
        const int finer = panels * spec.refinement;
        T fine = apply_rule<T>(f, a, b, finer, spec.nodes_per_panel);
        const double diff = std::abs(fine - coarse);
        if (!std::isfinite(diff)) {
            throw QuadratureError("integrand is not finite on the interval", cplx(coarse), cplx(fine));
        }
        if (diff <= spec.tolerance * std::max(1.0, std::abs(fine))) return {fine, diff, finer};
        if (level == spec.max_refinements) {
            std::ostringstream msg;
            msg << "quadrature on [" << a << ", " << b << "] did not converge: " << finer
                << " panels changed the estimate by " << diff;
            throw QuadratureError(msg.str(), cplx(coarse), cplx(fine));
        }
        coarse = fine;
        panels = finer;
    }
    return {coarse, 0.0, panels};  // unreachable
}

template <class T, class F>
Integral<T> pieces_impl(const F& f, std::span<const double> bp, const QuadratureSpec& spec) {
    Integral<T> total;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        const auto part = integrate_impl<T>(f, bp[i], bp[i + 1], spec);
        total.value += part.value;
        total.error += part.error;
        total.panels = std::max(total.panels, part.panels);
    }
    return total;
}

}  // namespace

void QuadratureSpec::validate() const {
    if (panels_per_band < 1) throw InvalidInput("panels_per_band must be positive");
    if (refinement < 2) throw InvalidInput("refinement factor must be at least 2");
    if (!(tolerance > 0.0)) throw InvalidInput("quadrature tolerance must be positive");
    if (max_refinements < 0) throw InvalidInput("max_refinements must be nonnegative");
    const auto counts = supported_node_counts();
    if (std::find(counts.begin(), counts.end(), nodes_per_panel) == counts.end()) {
        throw InvalidInput("nodes_per_panel must be one of 16, 20, 32, 64");
    }
}

std::span<const int> supported_node_counts() { return kNodeCounts; }

std::vector<Node> composite_rule(double a, double b, int panels, int nodes_per_panel) {
    if (panels < 1) throw InvalidInput("panel count must be positive");
    const auto& ref = reference(nodes_per_panel);
    const double width = (b - a) / panels;
    std::vector<Node> out;
    out.reserve(static_cast<std::size_t>(panels) * ref.size());
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * width;
        for (const Node& n : ref) out.push_back({mid + 0.5 * width * n.x, 0.5 * width * n.w});
    }
    return out;
}

Integral<cplx> integrate(const ComplexIntegrand& f, double a, double b, const QuadratureSpec& spec) {
    return integrate_impl<cplx>(f, a, b, spec);
}

Integral<double> integrate_real(const RealIntegrand& f, double a, double b, const QuadratureSpec& spec) {
    return integrate_impl<double>(f, a, b, spec);
}

Integral<cplx> integrate_pieces(const ComplexIntegrand& f, std::span<const double> breakpoints,
                                const QuadratureSpec& spec) {
    return pieces_impl<cplx>(f, breakpoints, spec);
}

Integral<double> integrate_pieces_real(const RealIntegrand& f, std::span<const double> breakpoints,
                                  const QuadratureSpec& spec) {
    return pieces_impl<double>(f, breakpoints, spec);
}

}  // namespace matchlet
