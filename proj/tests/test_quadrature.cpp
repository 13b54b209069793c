#include <doctest.h>

#include <cmath>
#include <vector>

#include "matchlet/quadrature.hpp"

using namespace matchlet;

TEST_SUITE("quadrature") {

TEST_CASE("trivial integrals") {
    const auto c = integrate_real([](double x) { return std::cos(x); }, 0.0, kTwoPi);
    CHECK(std::abs(c.value) < 1e-14);

    const auto sq = integrate_real([](double x) { return std::cos(3 * x) * std::cos(3 * x); }, -kPi / 3, kPi / 3);
    CHECK(sq.value == doctest::Approx(kPi / 3).epsilon(1e-14));

    const auto one = integrate_real([](double) { return 1.0; }, kPi, kTwoPi);
    CHECK(one.value == doctest::Approx(kPi).epsilon(1e-15));
}

TEST_CASE("complex integrand and pieces") {
    const std::vector<double> bp{0.0, 1.0, 2.5, kPi};
    const auto r = integrate_pieces([](double x) { return std::polar(1.0, x); }, bp);
    CHECK(std::abs(r.value - cplx(0.0, 2.0)) < 1e-13);  // int_0^pi e^{ix} = 2i
    const auto k = integrate_pieces_real([](double x) { return std::abs(x - 1.0); }, bp);
    CHECK(k.value == doctest::Approx(0.5 + 0.5 * (kPi - 1) * (kPi - 1)).epsilon(1e-14));
}

TEST_CASE("error estimate bounds one further refinement") {
    const std::vector<std::function<double(double)>> fs{
        [](double x) { return std::exp(-x * x) * std::cos(7 * x); },
        [](double x) { return std::sqrt(1.0 + x); },
        [](double x) { return std::sin(40 * x) / (1.0 + x * x); },
    };
    for (const auto& f : fs) {
        QuadratureSpec spec;
        const auto base = integrate_real(f, 0.0, 3.0, spec);
        QuadratureSpec finer = spec;
        finer.panels_per_band = base.panels;
        finer.max_refinements = 0;
        const auto more = integrate_real(f, 0.0, 3.0, finer);
        CHECK(std::abs(more.value - base.value) <= base.error + 1e-15);
    }
}

TEST_CASE("supported orders and validation") {
    for (int n : supported_node_counts()) {
        const auto rule = composite_rule(-1.0, 1.0, 1, n);
        double s = 0.0;
        for (const Node& nd : rule) s += nd.w * std::pow(nd.x, 2 * n - 2);
        CHECK(s == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-13));
    }
    QuadratureSpec bad;
    bad.nodes_per_panel = 7;
    CHECK_THROWS_AS(bad.validate(), InvalidInput);
    bad = {};
    bad.refinement = 1;
    CHECK_THROWS_AS(bad.validate(), InvalidInput);
}

TEST_CASE("non-convergence raises with both estimates") {
    QuadratureSpec spec;
    spec.panels_per_band = 1;
    spec.nodes_per_panel = 16;
    spec.max_refinements = 1;
    spec.tolerance = 1e-15;
    try {
        integrate_real([](double x) { return std::sin(2000 * x); }, 0.0, 10.0, spec);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(e.coarse() != e.fine());
    }
}

}
