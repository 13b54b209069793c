#include "matchlet/verification.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace matchlet {

namespace {

// Smooth pieces of the positive-frequency overlap of two scaled supports.
std::vector<double> overlap_breakpoints(const FrequencyFunction& f, double sf,
                                        const FrequencyFunction& g, double sg) {
    if (f.breakpoints.size() < 2 || g.breakpoints.size() < 2) {
        throw InvalidInput("frequency function needs at least two breakpoints");
    }
    const double lo = std::max(sf * f.breakpoints.front(), sg * g.breakpoints.front());
    const double hi = std::min(sf * f.breakpoints.back(), sg * g.breakpoints.back());
    if (!(lo < hi)) return {};
    std::vector<double> bp{lo, hi};
    for (double b : f.breakpoints) bp.push_back(sf * b);
    for (double b : g.breakpoints) bp.push_back(sg * b);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::remove_if(bp.begin(), bp.end(), [&](double b) { return b < lo || b > hi; }),
             bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    return bp;
}

Eigen::MatrixXcd assemble(const FrequencyFunction& f, const FrequencyFunction& g, int shifts,
                          int jf, int jg, const std::vector<double>& bp, int panels, int nodes) {
    const int n = 2 * shifts + 1;
    const double sf = std::ldexp(1.0, jf);
    const double sg = std::ldexp(1.0, jg);
    std::vector<Node> rule;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        auto piece = composite_rule(bp[i], bp[i + 1], panels, nodes);
        for (const Node& nd : piece) {
            rule.push_back(nd);
            rule.push_back({-nd.x, nd.w});
        }
    }
    const auto m = static_cast<Eigen::Index>(rule.size());
    Eigen::MatrixXcd a(m, n);
    Eigen::MatrixXcd b(m, n);
    Eigen::VectorXd w(m);
    const double norm_f = 1.0 / std::sqrt(sf);
    const double norm_g = 1.0 / std::sqrt(sg);
    for (Eigen::Index r = 0; r < m; ++r) {
        const double xi = rule[static_cast<std::size_t>(r)].x;
        w(r) = rule[static_cast<std::size_t>(r)].w / kTwoPi;
        const cplx fv = norm_f * f.transform(xi / sf);
        const cplx gv = norm_g * g.transform(xi / sg);
        for (int k = -shifts; k <= shifts; ++k) {
            a(r, k + shifts) = fv * std::polar(1.0, xi * k / sf);
            b(r, k + shifts) = gv * std::polar(1.0, xi * k / sg);
        }
    }
    return a.transpose() * w.asDiagonal() * b.conjugate();
}

}  // namespace

GramResult gram_matrix(const FrequencyFunction& f, const FrequencyFunction& g, int shifts,
                       int scale_f, int scale_g, const QuadratureSpec& spec) {
    spec.validate();
    if (shifts < 0) throw InvalidInput("shift count must be nonnegative");
    const int n = 2 * shifts + 1;
    const auto bp = overlap_breakpoints(f, std::ldexp(1.0, scale_f), g, std::ldexp(1.0, scale_g));
    if (bp.empty()) return {Eigen::MatrixXcd::Zero(n, n), 0.0, 0};

    int panels = spec.panels_per_band;
    Eigen::MatrixXcd coarse = assemble(f, g, shifts, scale_f, scale_g, bp, panels, spec.nodes_per_panel);
    for (int level = 0; level <= spec.max_refinements; ++level) {
        const int finer = panels * spec.refinement;
        Eigen::MatrixXcd fine = assemble(f, g, shifts, scale_f, scale_g, bp, finer, spec.nodes_per_panel);
        const double diff = (fine - coarse).cwiseAbs().maxCoeff();
        const double scale = std::max(1.0, fine.cwiseAbs().maxCoeff());
        if (diff <= spec.tolerance * scale) return {std::move(fine), diff, finer};
        if (level == spec.max_refinements) {
            std::ostringstream msg;
            msg << "Gram matrix quadrature did not converge (change " << diff << " at " << finer
                << " panels)";
            throw QuadratureError(msg.str(), coarse(0, 0), fine(0, 0));
        }
        coarse = std::move(fine);
        panels = finer;
    }
    return {coarse, 0.0, panels};
}

double hermitian_defect(const Eigen::MatrixXcd& g) { return (g - g.adjoint()).cwiseAbs().maxCoeff(); }

double toeplitz_defect(const Eigen::MatrixXcd& g) {
    double worst = 0.0;
    for (Eigen::Index r = 1; r < g.rows(); ++r) {
        for (Eigen::Index c = 1; c < g.cols(); ++c) {
            worst = std::max(worst, std::abs(g(r, c) - g(r - 1, c - 1)));
        }
    }
    return worst;
}

double periodized_energy(const FrequencyFunction& f, double xi) {
    const double reach = f.breakpoints.back();
    const auto k_lo = static_cast<long>(std::ceil((-reach - xi) / kTwoPi));
    const auto k_hi = static_cast<long>(std::floor((reach - xi) / kTwoPi));
    double sum = 0.0;
    for (long k = k_lo; k <= k_hi; ++k) sum += std::norm(f.transform(xi + kTwoPi * static_cast<double>(k)));
    return sum;
}

std::vector<double> uniform_grid(double lo, double hi, int count) {
    std::vector<double> out;
    if (count <= 0) return out;
    out.reserve(static_cast<std::size_t>(count));
    const double step = (hi - lo) / count;
    for (int i = 0; i < count; ++i) out.push_back(lo + step * i);
    return out;
}

bool evaluate(double measured, double target, double tolerance, Comparison comparison) {
    if (std::isnan(measured)) return false;
    switch (comparison) {
        case Comparison::within: return std::abs(measured - target) <= tolerance;
        case Comparison::at_most: return measured <= target + tolerance;
        case Comparison::at_least: return measured >= target - tolerance;
    }
    return false;
}

std::string to_string(Comparison c) {
    switch (c) {
        case Comparison::within: return "within";
        case Comparison::at_most: return "at_most";
        case Comparison::at_least: return "at_least";
    }
    return "within";
}

Comparison comparison_from_string(const std::string& s) {
    if (s == "within") return Comparison::within;
    if (s == "at_most") return Comparison::at_most;
    if (s == "at_least") return Comparison::at_least;
    throw InvalidInput("unknown comparison '" + s + "'");
}

Check& VerificationReport::add(std::string name, double measured, double target, double tolerance,
                               Comparison comparison, std::string oracle, std::string note) {
    Check c;
    c.name = std::move(name);
    c.measured = measured;
    c.target = target;
    c.tolerance = tolerance;
    c.comparison = comparison;
    c.passed = evaluate(measured, target, tolerance, comparison);
    c.oracle = std::move(oracle);
    c.note = std::move(note);
    checks.push_back(std::move(c));
    return checks.back();
}

Check& VerificationReport::add_flag(std::string name, bool passed, std::string oracle, std::string note) {
    Check& c = add(std::move(name), passed ? 1.0 : 0.0, 1.0, 0.0, Comparison::within, std::move(oracle),
                   std::move(note));
    return c;
}

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed || !c.required; });
}

const Check* VerificationReport::find(const std::string& name) const {
    for (const Check& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

}  // namespace matchlet
