#include <doctest.h>

#include <cmath>
#include <string>

#include "matchlet/matched_riesz.hpp"
#include "oracles.hpp"

using namespace matchlet;

namespace {
DataSequence seq(long first, std::vector<double> v) { return DataSequence::finite(first, v); }
}

TEST_SUITE("matched_riesz") {

TEST_CASE("worked case gamma = (1, 1/2)") {
    const MatchedWavelet psi = design_matched(seq(0, {1.0, 0.5}));
    CHECK(std::abs(psi.bounds().lower - oracle::frozen::matched_lower) < 1e-9);
    CHECK(std::abs(psi.bounds().upper - oracle::frozen::matched_upper) < 1e-9);
    const InterpolationReport r = verify_interpolation(psi, 20, 1e-8);
    CHECK(r.passed);
    CHECK(r.points.size() == 41);
    CHECK(r.max_residual < 1e-8);
    for (double t : {-1.3, 0.0, 0.77, 2.9}) {
        const double expected = oracle::shannon_wavelet(t) + 0.5 * oracle::shannon_wavelet(t - 1.0);
        CHECK(std::abs(psi.eval_time(t) - cplx(expected)) < 1e-10);
    }
}

TEST_CASE("delta data reproduce the cardinal wavelet") {
    const MatchedWavelet psi = design_matched(seq(0, {1.0}));
    CHECK(psi.bounds().lower == doctest::Approx(1.0));
    CHECK(std::abs(psi.eval_time(0.5) - cplx(1.0)) < 1e-12);
    CHECK(std::abs(psi.eval_time(1.5)) < 1e-12);
}

TEST_CASE("shifted data move the interpolation lattice with them") {
    const MatchedWavelet psi = design_matched(seq(-2, {0.25, 0.0, 1.0}));
    CHECK(std::abs(psi.eval_time(-1.5) - cplx(0.25)) < 1e-10);
    CHECK(std::abs(psi.eval_time(0.5) - cplx(1.0)) < 1e-10);
    CHECK(std::abs(psi.eval_time(-0.5)) < 1e-10);
}

TEST_CASE("complex data") {
    const MatchedWavelet psi = design_matched(DataSequence::finite(0, std::vector<cplx>{{1.0, 0.0}, {0.0, 0.4}}));
    CHECK(verify_interpolation(psi, 5, 1e-8).passed);
    for (double xi : {0.3, 1.9, 4.4}) {
        CHECK(frame_function(psi, xi) == doctest::Approx(psi.symbol().modulus_squared(-xi)).epsilon(1e-12));
    }
}

TEST_CASE("vanishing symbol is rejected with the offending root") {
    try {
        design_matched(seq(0, {1.0, 1.0}));
        FAIL("expected rejection");
    } catch (const DesignRejected& e) {
        const std::string msg = e.what();
        CHECK(msg.find("(-1") != std::string::npos);
        CHECK(msg.find("perturb_roots") != std::string::npos);
    }
}

TEST_CASE("perturbed design has the predicted lower bound") {
    const MatchedWavelet psi = design_matched(perturb_roots(seq(0, {1.0, 1.0}), 0.05));
    CHECK(std::abs(psi.bounds().lower - oracle::frozen::perturbed_lower) < 1e-9);
}

TEST_CASE("frame function identity on a grid") {
    const MatchedWavelet psi = design_matched(seq(-1, {0.2, 1.0, -0.3}));
    double worst = 0.0;
    for (double xi : uniform_grid(0.0, kTwoPi, 4096)) {
        worst = std::max(worst, std::abs(frame_function(psi, xi) - std::norm(oracle::symbol({0.2, 1.0, -0.3}, -1, -xi))));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("Gram spectrum lies inside the frame bounds") {
    const MatchedWavelet psi = design_matched(seq(0, {1.0, 0.5}));
    const GramSpectrum g = gram_eigen_check(psi, 32);
    CHECK(g.eigenvalues.size() == 65);
    CHECK(g.inside(0.25 - 1e-6, 2.25 + 1e-6));
    CHECK(g.hermitian_defect < 1e-12);
    CHECK(g.toeplitz_defect < 1e-12);
}

TEST_CASE("dual expansion reconstructs the cardinal wavelet") {
    const MatchedWavelet psi = design_matched(seq(0, {1.0, 0.5}));
    const auto a = reconstruct_cardinal(psi, 16);
    const auto b = reconstruct_cardinal(psi, 32);
    CHECK(b.max_residual <= a.max_residual);
    CHECK(b.max_residual < 1e-9);
}

TEST_CASE("decaying data are truncated with a certified symbol error") {
    auto gen = [](long k) { return cplx(std::pow(0.3, static_cast<double>(std::abs(k))), 0.0); };
    const auto g = DataSequence::decaying(0, {}, gen, {1.0, 1.0}, true);
    const MatchedWavelet psi = design_matched(g);
    CHECK(psi.gamma().is_finite());
    CHECK(psi.symbol().truncation_error() <= 1e-12);
    // Gamma = (1 - r^2) / |1 - r e^{i xi}|^2, extremes at xi = pi and 0
    const double r = 0.3;
    CHECK(std::abs(psi.bounds().lower - std::pow((1 - r) / (1 + r), 2)) < 1e-9);
    CHECK(std::abs(psi.bounds().upper - std::pow((1 + r) / (1 - r), 2)) < 1e-9);
    CHECK(verify_interpolation(psi, 10, 1e-8).passed);
}

}
