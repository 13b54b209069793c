#include "matchlet/cli.hpp"

#include <charconv>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "matchlet/problem.hpp"

namespace matchlet {

namespace {

const char* const kToolName = "matchlet";
const char* const kToolVersion = "1.0.0";

struct Outcome {
    VerificationReport report;
    std::optional<Json> payload;  // absent when the design was rejected
};

Outcome design_from(const ProblemSpec& p) {
    Outcome o;
    if (p.lattice == Lattice::half_integer) {
        try {
            const MatchedWavelet psi = design_matched(p.gamma, p.matched_options());
            o.report = run_suite(psi, p.suite);
            o.payload = matched_payload(psi);
        } catch (const DesignRejected&) {
            o.report = verify_matched(p.gamma, p.matched_options(), p.suite);
        }
    } else {
        try {
            const MeyerDesign d = design_meyer(p.gamma, p.meyer_options());
            o.report = run_suite(d, p.suite);
            o.payload = meyer_payload(d);
        } catch (const DesignRejected&) {
            o.report = verify_meyer(p.gamma, p.meyer_options(), p.suite);
        }
    }
    return o;
}

std::string derived_path(const std::string& source, const std::string& suffix) {
    std::string stem = source;
    const std::string ext = ".json";
    if (stem.size() > ext.size() && stem.compare(stem.size() - ext.size(), ext.size(), ext) == 0) {
        stem.resize(stem.size() - ext.size());
    }
    return stem + suffix;
}

std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json load_json(const std::string& path) {
    try {
        return Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

int finish_report(const VerificationReport& report, const std::optional<std::string>& path, std::ostream& out) {
    if (path) {
        write_atomic(*path, dump(report_to_json(report)));
        out << render_report(report) << "report: " << *path << "\n";
    } else {
        out << dump(report_to_json(report));
    }
    return report.passed() ? kExitAccepted : kExitRejected;
}

int cmd_design(const std::string& spec_path, std::optional<std::string> artifact_path,
               std::optional<std::string> report_path, const std::string& suite, std::ostream& out,
               std::ostream& err) {
    ProblemSpec p = load_problem(spec_path);
    if (!suite.empty()) {
        if (!is_known_suite(suite)) throw InvalidInput("--suite: unknown suite '" + suite + "'");
        p.suite = suite;
    }
    if (!artifact_path) artifact_path = p.artifact_path ? *p.artifact_path : derived_path(spec_path, ".artifact.json");
    if (!report_path) report_path = p.report_path ? *p.report_path : derived_path(spec_path, ".report.json");

    const Outcome o = design_from(p);
    if (o.payload) {
        DesignArtifact a;
        a.problem = problem_to_json(p);
        a.payload = *o.payload;
        a.metadata = Json{{"tool", kToolName}, {"version", kToolVersion}, {"command", "design"},
                          {"source", spec_path}, {"suite", p.suite}};
        write_atomic(*artifact_path, dump(artifact_to_json(a)));
        out << "artifact: " << *artifact_path << "\n";
    } else {
        err << "design rejected; no artifact written\n";
    }
    return finish_report(o.report, report_path, out);
}

int cmd_verify(const std::string& artifact_path, const std::optional<std::string>& report_path,
               const std::string& suite, std::ostream& out) {
    const DesignArtifact a = load_artifact(artifact_path);
    ProblemSpec p = parse_problem(a.problem);
    if (!suite.empty()) {
        if (!is_known_suite(suite)) throw InvalidInput("--suite: unknown suite '" + suite + "'");
        p.suite = suite;
    }
    Outcome o = design_from(p);
    const bool identical = o.payload && o.payload->dump() == a.payload.dump();
    if (!identical) {
        o.report.add_flag("artifact.payload_identical", false, "redesign from the problem echo",
                          o.payload ? "stored coefficients differ from the recomputed ones"
                                    : "the problem echo no longer yields an accepted design");
    }
    return finish_report(o.report, report_path, out);
}

int cmd_sample(const std::string& artifact_path, double t_min, double t_max, long points,
               const std::optional<std::string>& csv_path, std::ostream& out) {
    if (points < 0) throw InvalidInput("--points must be nonnegative");
    if (!(t_min <= t_max)) throw InvalidInput("--t-min must not exceed --t-max");
    const DesignArtifact a = load_artifact(artifact_path);
    const ProblemSpec p = parse_problem(a.problem);
    const std::string kind = a.payload.value("kind", "");

    std::vector<double> ts;
    for (long i = 0; i < points; ++i) {
        ts.push_back(points == 1 ? t_min
                                 : t_min + (t_max - t_min) * static_cast<double>(i) / static_cast<double>(points - 1));
    }
    if (points > 1) ts.back() = t_max;

    std::ostringstream csv;
    if (kind == "matched") {
        const MatchedWavelet psi = matched_from_payload(a.payload, p);
        const bool complex_values = !psi.gamma().is_real();
        csv << (complex_values ? "t,value,value_im\n" : "t,value\n");
        for (double t : ts) {
            const cplx v = psi.eval_time(t);
            csv << shortest(t) << ',' << shortest(v.real());
            if (complex_values) csv << ',' << shortest(v.imag());
            csv << '\n';
        }
    } else if (kind == "meyer") {
        const MeyerWaveletModel m = meyer_from_payload(a.payload, p);
        csv << "t,value\n";
        for (double t : ts) csv << shortest(t) << ',' << shortest(eval_psi_time(m, t)) << '\n';
    } else {
        throw InvalidInput(artifact_path + ": unknown payload kind '" + kind + "'");
    }
    if (csv_path) {
        write_atomic(*csv_path, csv.str());
    } else {
        out << csv.str();
    }
    return kExitAccepted;
}

int cmd_perturb(const std::string& spec_path, double delta, std::optional<std::string> out_path,
                std::ostream& out) {
    Json raw = load_json(spec_path);
    const ProblemSpec p = parse_problem(raw);
    if (p.lattice != Lattice::half_integer) throw InvalidInput("perturb applies to the half-integer lattice only");
    if (!p.gamma.is_finite()) throw InvalidInput("perturb needs finite gamma");
    if (!(delta > 0.0)) throw InvalidInput("--delta must be positive");

    const DataSequence moved = perturb_roots(p.gamma, delta);
    const auto moves = perturbation_moves(p.gamma, delta);
    if (!out_path) out_path = derived_path(spec_path, ".perturbed.json");
    if (moves.empty()) {
        out << "no on-circle roots within " << delta << "; gamma unchanged\n";
    } else {
        raw["gamma"] = gamma_to_json(moved);
        for (const auto& [from, to] : moves) {
            out << "root (" << shortest(from.real()) << ", " << shortest(from.imag()) << ") -> ("
                << shortest(to.real()) << ", " << shortest(to.imag()) << ")\n";
        }
        const long lo = std::min(p.gamma.first_index(), moved.first_index());
        const long hi = std::max(p.gamma.last_index(), moved.last_index());
        for (long k = lo; k <= hi; ++k) {
            const cplx a = p.gamma[k];
            const cplx b = moved[k];
            if (a == b) continue;
            out << "gamma[" << k << "]: " << format_double(a.real());
            if (a.imag() != 0.0 || b.imag() != 0.0) out << " + " << format_double(a.imag()) << "i";
            out << " -> " << format_double(b.real());
            if (a.imag() != 0.0 || b.imag() != 0.0) out << " + " << format_double(b.imag()) << "i";
            out << "\n";
        }
    }
    write_atomic(*out_path, dump(raw));
    out << "spec: " << *out_path << "\n";
    return kExitAccepted;
}

int cmd_feasible(const std::string& spec_path, const std::vector<long>& free, std::optional<std::string> out_path,
                 std::ostream& out, std::ostream& err) {
    Json raw = load_json(spec_path);
    const ProblemSpec p = parse_problem(raw);
    if (p.lattice != Lattice::meyer3) throw InvalidInput("feasible applies to the meyer3 lattice only");
    if (free.size() != 2) throw InvalidInput("--free takes two indices, e.g. --free 0,1");

    FeasibleProjection fp;
    try {
        fp = project_feasible(p.gamma, {free[0], free[1]}, p.tolerances.admissibility, p.tolerances.meyer_truncation);
    } catch (const DesignRejected& e) {
        err << e.what() << "\n"
            << "suggestion: pick free indices whose 2-adic valuations differ, for example --free 0,1\n";
        return kExitRejected;
    }
    for (const std::string& w : fp.warnings) err << "warning: " << w << "\n";

    const DataSequence& g = fp.sequence;
    const long last = g.is_zero() ? -1 : g.last_index();
    Json values = Json::array();
    for (long k = 0; k <= last; ++k) values.push_back(format_double(g[k].real()));
    if (p.gamma.is_finite()) {
        raw["gamma"] = values;
    } else {
        raw["gamma"]["head"] = values;
    }
    for (long k = 0; k <= std::max(last, p.gamma.is_zero() ? -1L : p.gamma.last_index()); ++k) {
        const double a = p.gamma[k].real();
        const double b = g[k].real();
        if (a != b) out << "gamma[" << k << "]: " << format_double(a) << " -> " << format_double(b) << "\n";
    }
    out << "lhs1 = " << format_double(fp.report.lhs1) << ", lhs2 = " << format_double(fp.report.lhs2)
        << ", lhs3 = " << format_double(fp.report.lhs3) << "\n";
    if (!out_path) out_path = derived_path(spec_path, ".feasible.json");
    write_atomic(*out_path, dump(raw));
    out << "spec: " << *out_path << "\n";
    return kExitAccepted;
}

int cmd_report(const std::string& path, std::ostream& out) {
    const VerificationReport r = report_from_json(load_json(path));
    out << render_report(r);
    return r.passed() ? kExitAccepted : kExitRejected;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Matched and Meyer wavelet designer", kToolName};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    std::string spec_path, artifact_path, suite;
    std::optional<std::string> out_path, report_path;
    double delta = 0.0, t_min = 0.0, t_max = 0.0;
    long points = 0;
    std::vector<long> free;

    auto* design = app.add_subcommand("design", "design a wavelet from a problem spec and run the default suite");
    design->add_option("--spec", spec_path, "problem spec (JSON)")->required();
    design->add_option("--out", out_path, "artifact path (default: <spec>.artifact.json)");
    design->add_option("--report", report_path, "report path (default: <spec>.report.json)");
    design->add_option("--suite", suite, "suite name: default or quick");

    auto* verify = app.add_subcommand("verify", "redesign from an artifact and rerun its suite");
    verify->add_option("--artifact", artifact_path, "design artifact (JSON)")->required();
    verify->add_option("--report", report_path, "report path (default: JSON on stdout)");
    verify->add_option("--suite", suite, "suite name: default or quick");

    auto* sample = app.add_subcommand("sample", "sample the designed wavelet as CSV");
    sample->add_option("--artifact", artifact_path, "design artifact (JSON)")->required();
    sample->add_option("--t-min", t_min, "first sample point")->required();
    sample->add_option("--t-max", t_max, "last sample point")->required();
    sample->add_option("--points", points, "number of samples, endpoints included")->required();
    sample->add_option("--out", out_path, "CSV path (default: stdout)");

    auto* perturb = app.add_subcommand("perturb", "move symbol roots off the unit circle");
    perturb->add_option("--spec", spec_path, "problem spec (JSON)")->required();
    perturb->add_option("--delta", delta, "target distance from the unit circle")->required();
    perturb->add_option("--out", out_path, "new spec path (default: <spec>.perturbed.json)");

    auto* feasible = app.add_subcommand("feasible", "adjust two Meyer data entries to satisfy admissibility");
    feasible->add_option("--spec", spec_path, "problem spec (JSON)")->required();
    feasible->add_option("--free", free, "two free indices, e.g. 0,1")->required()->expected(2)->delimiter(',');
    feasible->add_option("--out", out_path, "new spec path (default: <spec>.feasible.json)");

    auto* report = app.add_subcommand("report", "print a verification report");
    report->add_option("--report", report_path, "report (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitAccepted : kExitInputError;
    }

    try {
        if (*design) return cmd_design(spec_path, out_path, report_path, suite, out, err);
        if (*verify) return cmd_verify(artifact_path, report_path, suite, out);
        if (*sample) return cmd_sample(artifact_path, t_min, t_max, points, out_path, out);
        if (*perturb) return cmd_perturb(spec_path, delta, out_path, out);
        if (*feasible) return cmd_feasible(spec_path, free, out_path, out, err);
        if (*report) return cmd_report(*report_path, out);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const Json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitRejected;
    }
    return kExitInputError;
}

}  // namespace matchlet
