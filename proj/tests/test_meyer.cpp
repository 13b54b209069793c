#include <doctest.h>

#include <cmath>
#include <random>

#include "matchlet/meyer.hpp"
#include "oracles.hpp"

using namespace matchlet;
namespace fz = oracle::frozen;

namespace {
DataSequence two_point() { return DataSequence::finite(0, std::vector<double>{fz::meyer_gamma0, fz::meyer_gamma1}); }
}

TEST_SUITE("meyer") {

TEST_CASE("bell coefficients of the two-point data") {
    const BellCoefficients b = solve_h_coefficients(two_point());
    CHECK(std::abs(b[0] - fz::meyer_h0) < 1e-12);
    CHECK(std::abs(b[1] - fz::meyer_h1) < 1e-12);
    for (long n = 2; n <= b.n_max(); ++n) CHECK(std::abs(b[n]) < 1e-12);
    CHECK(b.abs_tail_bound == 0.0);
    CHECK(recurrence_residual(b, two_point()) < 1e-15);
    CHECK(oracle::recurrence_residual(b.coefficients, {fz::meyer_gamma0, fz::meyer_gamma1}) < 1e-15);
}

TEST_CASE("admissibility of the two-point data") {
    const AdmissibilityReport a = check_admissibility(two_point());
    CHECK(std::abs(a.lhs1 - 1.0) < 1e-12);
    CHECK(std::abs(a.lhs2 - oracle::sqrt2 / 2) < 1e-12);
    CHECK(std::abs(a.lhs3 - 1.0) < 1e-12);
    CHECK(a.passed());
}

TEST_CASE("admissibility sums agree with direct enumeration") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> g(1 + trial * 3);
        for (std::size_t k = 0; k < g.size(); ++k) g[k] = u(rng) / (1.0 + static_cast<double>(k * k));
        double l1, l2;
        oracle::admissibility(g, l1, l2);
        const AdmissibilityReport a = check_admissibility(DataSequence::finite(0, g));
        CHECK(std::abs(a.lhs1 - l1) < 1e-13);
        CHECK(std::abs(a.lhs2 - l2) < 1e-13);
    }
}

TEST_CASE("bell profile values and derivative") {
    const MeyerWaveletModel m = build_meyer(solve_h_coefficients(two_point()));
    CHECK(std::abs(m.h(0.0) - 1.0) < 1e-12);
    CHECK(std::abs(m.h(kPi / 3) - oracle::sqrt2 / 2) < 1e-12);
    CHECK(std::abs(eval_h_derivative(m.bell(), 0.0)) < 1e-12);
    CHECK(std::abs(eval_h_derivative(m.bell(), kPi / 3)) < 1e-12);
    CHECK(m.grid_max_abs_h() <= 1.0 + 1e-12);
    const double d = (m.h(0.4 + 1e-6) - m.h(0.4 - 1e-6)) / 2e-6;
    CHECK(eval_h_derivative(m.bell(), 0.4) == doctest::Approx(d).epsilon(1e-6));
}

TEST_CASE("partition of unity and mask complementarity") {
    const MeyerWaveletModel m = build_meyer(solve_h_coefficients(two_point()));
    const FrequencyFunction phi = m.scaling_function();
    double pou = 0.0, mask = 0.0;
    for (double xi : uniform_grid(-kPi, kPi, 4096)) {
        pou = std::max(pou, std::abs(periodized_energy(phi, xi) - 1.0));
        mask = std::max(mask, std::abs(m.mask(xi) * m.mask(xi) + m.mask(xi + kPi) * m.mask(xi + kPi) - 1.0));
    }
    CHECK(pou < 1e-10);
    CHECK(mask < 1e-10);
    CHECK(m.scaling_hat(0.0) == doctest::Approx(1.0));
    CHECK(m.scaling_hat(4.5) == 0.0);
}

TEST_CASE("wavelet transform matches the bell construction") {
    const MeyerWaveletModel m = build_meyer(solve_h_coefficients(two_point()));
    const std::vector<double> hh{fz::meyer_h0, fz::meyer_h1};
    for (double xi : {2.2, 3.0, 3.9, 4.5, 6.0, 8.3}) {
        CHECK(m.sin_lambda(xi) == doctest::Approx(oracle::meyer_sin_lambda(hh, xi)).epsilon(1e-12));
        CHECK(std::abs(m.wavelet_hat(xi) - std::polar(m.sin_lambda(xi), -xi / 2)) < 1e-15);
        CHECK(m.wavelet_hat(-xi) == std::conj(m.wavelet_hat(xi)));
    }
    CHECK(m.sin_lambda(1.0) == 0.0);
    CHECK(m.sin_lambda(9.0) == 0.0);
}

TEST_CASE("lattice interpolation for k >= 1 and the origin value") {
    const MeyerWaveletModel m = build_meyer(solve_h_coefficients(two_point()));
    CHECK(std::abs(eval_psi_time(m, 3.5) - fz::meyer_gamma1) < 1e-10);
    for (long k = 2; k <= 8; ++k) CHECK(std::abs(eval_psi_time(m, 0.5 + 3.0 * k)) < 1e-10);
    for (long k = 0; k <= 8; ++k) {
        CHECK(std::abs(eval_lattice(m, k) - eval_psi_time(m, 0.5 + 3.0 * k)) < 1e-10);
        CHECK(std::abs(eval_lattice(m, k) - m.lattice_series(k)) < 1e-12);
    }
    // The reduced integral at k = 0 gives sqrt2 h(0) = 2 gamma_0, cross-checked by Simpson.
    CHECK(std::abs(eval_psi_time(m, 0.5) - fz::meyer_psi_half) < 1e-12);
    CHECK(std::abs(oracle::meyer_psi({fz::meyer_h0, fz::meyer_h1}, 0.5) - fz::meyer_psi_half) < 1e-8);
    CHECK(std::abs(oracle::meyer_psi({fz::meyer_h0, fz::meyer_h1}, 3.5) - fz::meyer_gamma1) < 1e-8);
}

TEST_CASE("symmetry about one half") {
    const MeyerWaveletModel m = build_meyer(solve_h_coefficients(two_point()));
    for (double s : {0.3, 1.7, 3.0, 5.55}) {
        CHECK(std::abs(eval_psi_time(m, 0.5 + s) - eval_psi_time(m, 0.5 - s)) < 1e-12);
    }
}

TEST_CASE("orthonormality of shifts and scales") {
    const MeyerWaveletModel m = build_meyer(solve_h_coefficients(two_point()));
    const FrequencyFunction psi = m.wavelet_function();
    const GramResult same = gram_matrix(psi, 8, 0, 0);
    CHECK((same.matrix - Eigen::MatrixXcd::Identity(17, 17)).cwiseAbs().maxCoeff() < 1e-7);
    CHECK(gram_matrix(psi, psi, 8, 0, 1).matrix.cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("inadmissible data are rejected") {
    const auto g = DataSequence::finite(0, std::vector<double>{1.0, 0.2});
    const AdmissibilityReport a = check_admissibility(g);
    CHECK_FALSE(a.pass1);
    CHECK_THROWS_AS(design_meyer(g), DesignRejected);
}

TEST_CASE("bell profile exceeding one is rejected") {
    BellCoefficients b;
    b.coefficients = {0.5, 0.5 - 1e-3, 0.0, 0.0, 0.6};  // h(0) != 1 as well
    CHECK_THROWS_AS(build_meyer(b), DesignRejected);
}

TEST_CASE("input requirements") {
    CHECK_THROWS_AS(require_meyer_data(DataSequence::finite(-1, std::vector<double>{1.0, 1.0})), InvalidInput);
    CHECK_THROWS_AS(require_meyer_data(DataSequence::finite(0, std::vector<cplx>{{1.0, 1.0}})), InvalidInput);
    CHECK_NOTHROW(require_meyer_data(two_point()));
}

TEST_CASE("feasible projection from zero") {
    const auto zero = DataSequence::finite(0, std::vector<double>{});
    const FeasibleProjection p = project_feasible(zero, {0, 1});
    CHECK(std::abs(p.sequence[0].real() - fz::meyer_gamma0) < 1e-14);
    CHECK(std::abs(p.sequence[1].real() - fz::meyer_gamma1) < 1e-14);
    CHECK(p.warnings.empty());

    const FeasibleProjection q = project_feasible(zero, {0, 2});
    CHECK(std::abs(q.sequence[0].real() - fz::feasible02_x0) < 1e-14);
    CHECK(std::abs(q.sequence[2].real() - fz::feasible02_x2) < 1e-14);
    CHECK(std::abs(q.report.lhs1 - 1.0) < 1e-13);
    CHECK(std::abs(q.report.lhs2 - oracle::sqrt2 / 2) < 1e-13);

    // weights (9, -3) at index 2 and (-15, 9) at index 4 give a regular system
    const FeasibleProjection r = project_feasible(zero, {2, 4});
    CHECK(std::abs(r.report.lhs1 - 1.0) < 1e-13);
    CHECK(std::abs(r.report.lhs2 - oracle::sqrt2 / 2) < 1e-13);

    const FeasibleProjection w = project_feasible(DataSequence::finite(0, std::vector<double>{0.0, 0.0, 0.5}), {0, 1});
    CHECK_FALSE(w.report.pass3);
    CHECK_FALSE(w.warnings.empty());
}

TEST_CASE("equal valuations make the free system singular") {
    const auto zero = DataSequence::finite(0, std::vector<double>{});
    CHECK_THROWS_AS(project_feasible(zero, {1, 3}), DesignRejected);
    CHECK_THROWS_AS(project_feasible(zero, {2, 6}), DesignRejected);
    CHECK_THROWS_AS(project_feasible(zero, {1, 1}), InvalidInput);
}

TEST_CASE("decaying data carry certified tails") {
    auto gen = [](long k) { return cplx(1e-3 * std::pow(1.0 + k, -4.0), 0.0); };
    const auto g0 = DataSequence::decaying(0, {}, gen, {1e-3, 2.0}, false);
    const FeasibleProjection p = project_feasible(g0, {0, 1});
    const AdmissibilityReport a = p.report;
    CHECK(a.pass1);
    CHECK(a.pass2);
    CHECK(a.tail1 > 0.0);
    const BellCoefficients b = solve_h_coefficients(p.sequence, 256);
    CHECK(b.abs_tail_bound > 0.0);
    CHECK(b.max_recurrence_residual < 1e-12);
    const MeyerDesign d = design_meyer(p.sequence);
    CHECK(std::abs(eval_psi_time(d.model, 6.5) - p.sequence[2].real()) < 1e-8);
}

}
