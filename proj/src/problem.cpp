#include "matchlet/problem.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace matchlet {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw InvalidInput(where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) bad(where, std::string("missing field '") + key + "'");
    return j.at(key);
}

double number_at(const Json& j, const char* key, const std::string& where) {
    try {
        return parse_double(field(j, key, where));
    } catch (const InvalidInput& e) {
        bad(where + "." + key, e.what());
    }
}

long integer(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) bad(where, "expected an integer");
    return j.get<long>();
}

cplx parse_value(const Json& v, const std::string& where) {
    try {
        if (v.is_array()) {
            if (v.size() != 2) bad(where, "complex values are [re, im] pairs");
            return {parse_double(v[0]), parse_double(v[1])};
        }
        return {parse_double(v), 0.0};
    } catch (const InvalidInput& e) {
        bad(where, e.what());
    }
}

std::vector<cplx> parse_values(const Json& arr, const std::string& where) {
    if (!arr.is_array()) bad(where, "expected a list of values");
    std::vector<cplx> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(parse_value(arr[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

Json value_to_json(cplx v) {
    if (v.imag() == 0.0) return format_double(v.real());
    return Json::array({format_double(v.real()), format_double(v.imag())});
}

Json number_json(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

// Geometric data decay faster than any power; a steep power keeps truncation short.
constexpr double kGeometricEpsilon = 8.0;

// Smallest constant with r^k <= C k^{-2-eps} for all k >= 1.
double geometric_constant(double ratio, double eps) {
    const double r = std::abs(ratio);
    if (r == 0.0) return 0.0;
    double best = 0.0;
    for (long k = 1; k <= 1000000; ++k) {
        const double kk = static_cast<double>(k);
        const double v = std::exp(kk * std::log(r) + (2.0 + eps) * std::log(kk));
        best = std::max(best, v);
        if (kk * -std::log(r) > (2.0 + eps) * std::log(kk) + 50.0) break;
    }
    return best * (1.0 + 1e-9);
}

DataSequence parse_generator(const Json& j) {
    const std::string where = "gamma";
    const Json& gen = field(j, "generator", where);
    if (!gen.is_string()) bad(where + ".generator", "expected a string");
    const std::string name = gen.get<std::string>();
    const double scale = j.contains("scale") ? number_at(j, "scale", where) : 1.0;
    const bool two_sided = j.value("two_sided", false);
    const long offset = j.contains("offset") ? integer(j.at("offset"), where + ".offset") : 0;
    std::vector<cplx> head;
    if (j.contains("head")) head = parse_values(j.at("head"), where + ".head");

    DataSequence::Generator g;
    DecayCertificate cert;
    if (name == "power") {
        const double p = number_at(j, "exponent", where);
        if (!(p > 2.0)) bad(where + ".exponent", "power generator needs exponent > 2");
        g = [scale, p](long k) { return cplx{scale * std::pow(1.0 + std::abs(static_cast<double>(k)), -p), 0.0}; };
        cert = {std::abs(scale), p - 2.0};
    } else if (name == "geometric") {
        const double r = number_at(j, "ratio", where);
        if (!(std::abs(r) < 1.0)) bad(where + ".ratio", "geometric generator needs |ratio| < 1");
        g = [scale, r](long k) { return cplx{scale * std::pow(r, static_cast<double>(std::abs(k))), 0.0}; };
        cert = {std::abs(scale) * geometric_constant(r, kGeometricEpsilon), kGeometricEpsilon};
    } else {
        bad(where + ".generator", "unknown generator '" + name + "' (expected power or geometric)");
    }
    if (j.contains("certificate")) {
        const Json& c = j.at("certificate");
        cert = {number_at(c, "constant", where + ".certificate"), number_at(c, "epsilon", where + ".certificate")};
    }
    try {
        return DataSequence::decaying(offset, std::move(head), std::move(g), cert, two_sided);
    } catch (const InvalidInput& e) {
        bad(where, e.what());
    }
}

Json admissibility_to_json(const AdmissibilityReport& a) {
    return Json{{"lhs1", format_double(a.lhs1)},           {"lhs2", format_double(a.lhs2)},
                {"lhs3", format_double(a.lhs3)},           {"tail1", format_double(a.tail1)},
                {"tail2", format_double(a.tail2)},         {"tail3", format_double(a.tail3)},
                {"tolerance", format_double(a.tolerance)}, {"truncation_index", a.truncation_index},
                {"pass1", a.pass1},                        {"pass2", a.pass2},
                {"pass3", a.pass3}};
}

std::vector<double> parse_doubles(const Json& arr, const std::string& where) {
    if (!arr.is_array()) bad(where, "expected a list");
    std::vector<double> out;
    out.reserve(arr.size());
    for (const Json& v : arr) out.push_back(parse_double(v));
    return out;
}

Json doubles_to_json(const std::vector<double>& v) {
    Json arr = Json::array();
    for (double x : v) arr.push_back(format_double(x));
    return arr;
}

}  // namespace

std::string to_string(Lattice lattice) {
    return lattice == Lattice::meyer3 ? "meyer3" : "half-integer";
}

Lattice lattice_from_string(const std::string& s) {
    if (s == "half-integer") return Lattice::half_integer;
    if (s == "meyer3") return Lattice::meyer3;
    throw InvalidInput("lattice: expected \"half-integer\" or \"meyer3\", got \"" + s + "\"");
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || end != s.c_str() + s.size() || (errno == ERANGE && std::isinf(v))) {
            throw InvalidInput("not a decimal number: \"" + s + "\"");
        }
        return v;
    }
    throw InvalidInput("expected a number or decimal string");
}

DataSequence parse_gamma(const Json& j) {
    if (j.is_array()) return DataSequence::finite(0, parse_values(j, "gamma"));
    if (!j.is_object()) bad("gamma", "expected a list, {offset, values} or a generator object");
    if (j.contains("generator")) return parse_generator(j);
    const long offset = j.contains("offset") ? integer(j.at("offset"), "gamma.offset") : 0;
    return DataSequence::finite(offset, parse_values(field(j, "values", "gamma"), "gamma.values"));
}

Json gamma_to_json(const DataSequence& gamma) {
    if (!gamma.is_finite()) throw InvalidInput("only finite data can be written as a value list");
    Json values = Json::array();
    for (cplx v : gamma.values()) values.push_back(value_to_json(v));
    return Json{{"offset", gamma.first_index()}, {"values", values}};
}

QuadratureSpec parse_quadrature(const Json& j, QuadratureSpec q) {
    if (!j.is_object()) bad("quadrature", "expected an object");
    for (const auto& [key, value] : j.items()) {
        const std::string where = "quadrature." + key;
        if (key == "panels_per_band") q.panels_per_band = static_cast<int>(integer(value, where));
        else if (key == "nodes_per_panel") q.nodes_per_panel = static_cast<int>(integer(value, where));
        else if (key == "refinement") q.refinement = static_cast<int>(integer(value, where));
        else if (key == "max_refinements") q.max_refinements = static_cast<int>(integer(value, where));
        else if (key == "tolerance") q.tolerance = parse_double(value);
        else bad(where, "unknown field");
    }
    try {
        q.validate();
    } catch (const InvalidInput& e) {
        bad("quadrature", e.what());
    }
    return q;
}

Json quadrature_to_json(const QuadratureSpec& q) {
    return Json{{"panels_per_band", q.panels_per_band},
                {"nodes_per_panel", q.nodes_per_panel},
                {"refinement", q.refinement},
                {"tolerance", q.tolerance},
                {"max_refinements", q.max_refinements}};
}

QuadratureSpec default_quadrature() {
    const char* env = std::getenv(kQuadratureEnv);
    if (env == nullptr || *env == '\0') return {};
    Json j;
    try {
        j = Json::parse(env);
    } catch (const Json::parse_error& e) {
        throw InvalidInput(std::string(kQuadratureEnv) + ": " + e.what());
    }
    return parse_quadrature(j, {});
}

MatchedOptions ProblemSpec::matched_options() const {
    MatchedOptions o;
    o.positivity_tolerance = tolerances.positivity;
    o.truncation_tolerance = tolerances.truncation;
    o.grid_density = tolerances.grid_density;
    o.quadrature = quadrature;
    return o;
}

MeyerDesignOptions ProblemSpec::meyer_options() const {
    MeyerDesignOptions o;
    o.admissibility_tolerance = tolerances.admissibility;
    o.truncation = tolerances.meyer_truncation;
    o.model.bound_tolerance = tolerances.bound;
    o.model.identity_tolerance = tolerances.identity;
    o.model.grid_density = tolerances.grid_density;
    o.model.quadrature = quadrature;
    return o;
}

ProblemSpec parse_problem(const Json& j) {
    if (!j.is_object()) bad("problem", "expected a JSON object");
    ProblemSpec p;
    if (j.contains("schema")) {
        const Json& s = j.at("schema");
        if (!s.is_string() || s.get<std::string>() != kSchemaVersion) {
            bad("schema", std::string("expected \"") + kSchemaVersion + "\"");
        }
    }
    const Json& lat = field(j, "lattice", "problem");
    if (!lat.is_string()) bad("lattice", "expected a string");
    p.lattice = lattice_from_string(lat.get<std::string>());

    p.gamma_json = field(j, "gamma", "problem");
    p.gamma = parse_gamma(p.gamma_json);
    if (p.lattice == Lattice::meyer3) {
        const Json& g = p.gamma_json;
        const bool shifted = g.is_object() && g.contains("offset") && !(g.at("offset").is_number_integer() && g.at("offset").get<long>() == 0);
        if (shifted) bad("gamma", "lattice meyer3 requires offset 0");
        if (!p.gamma.is_real()) bad("gamma", "lattice meyer3 requires real values");
        if (!p.gamma.is_finite() && p.gamma.two_sided()) bad("gamma", "lattice meyer3 data are one-sided (two_sided must be false)");
    }

    if (j.contains("suite")) {
        if (!j.at("suite").is_string()) bad("suite", "expected a string");
        p.suite = j.at("suite").get<std::string>();
        if (!is_known_suite(p.suite)) bad("suite", "unknown suite '" + p.suite + "'");
    }

    if (j.contains("tolerances")) {
        const Json& t = j.at("tolerances");
        if (!t.is_object()) bad("tolerances", "expected an object");
        for (const auto& [key, value] : t.items()) {
            const std::string where = "tolerances." + key;
            double* target = nullptr;
            if (key == "positivity") target = &p.tolerances.positivity;
            else if (key == "truncation") target = &p.tolerances.truncation;
            else if (key == "admissibility") target = &p.tolerances.admissibility;
            else if (key == "bound") target = &p.tolerances.bound;
            else if (key == "identity") target = &p.tolerances.identity;
            if (target != nullptr) {
                const double v = parse_double(value);
                if (!(v > 0.0) || !std::isfinite(v)) bad(where, "must be positive and finite");
                *target = v;
            } else if (key == "grid_density") {
                const long v = integer(value, where);
                if (v < 16) bad(where, "must be at least 16");
                p.tolerances.grid_density = static_cast<int>(v);
            } else if (key == "meyer_truncation") {
                const long v = integer(value, where);
                if (v < 1) bad(where, "must be positive");
                p.tolerances.meyer_truncation = v;
            } else {
                bad(where, "unknown field");
            }
        }
    }

    p.quadrature = default_quadrature();
    if (j.contains("quadrature")) p.quadrature = parse_quadrature(j.at("quadrature"), p.quadrature);

    if (j.contains("output")) {
        const Json& o = j.at("output");
        if (!o.is_object()) bad("output", "expected an object");
        if (o.contains("artifact")) p.artifact_path = o.at("artifact").get<std::string>();
        if (o.contains("report")) p.report_path = o.at("report").get<std::string>();
    }
    return p;
}

ProblemSpec load_problem(const std::string& path) {
    const std::string text = read_file(path);
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InvalidInput(path + ": " + e.what());
    }
    return parse_problem(j);
}

Json problem_to_json(const ProblemSpec& p) {
    Json j{{"schema", kSchemaVersion}, {"lattice", to_string(p.lattice)}, {"gamma", p.gamma_json}};
    j["suite"] = p.suite;
    j["tolerances"] = Json{{"positivity", p.tolerances.positivity},
                           {"truncation", p.tolerances.truncation},
                           {"admissibility", p.tolerances.admissibility},
                           {"bound", p.tolerances.bound},
                           {"identity", p.tolerances.identity},
                           {"grid_density", p.tolerances.grid_density},
                           {"meyer_truncation", p.tolerances.meyer_truncation}};
    j["quadrature"] = quadrature_to_json(p.quadrature);
    if (p.artifact_path || p.report_path) {
        Json o = Json::object();
        if (p.artifact_path) o["artifact"] = *p.artifact_path;
        if (p.report_path) o["report"] = *p.report_path;
        j["output"] = o;
    }
    return j;
}

Json artifact_to_json(const DesignArtifact& a) {
    return Json{{"format", a.format}, {"metadata", a.metadata}, {"problem", a.problem}, {"payload", a.payload}};
}

DesignArtifact artifact_from_json(const Json& j) {
    if (!j.is_object()) bad("artifact", "expected a JSON object");
    DesignArtifact a;
    const Json& f = field(j, "format", "artifact");
    if (!f.is_string() || f.get<std::string>() != kSchemaVersion) {
        bad("artifact.format", std::string("expected \"") + kSchemaVersion + "\"");
    }
    a.format = f.get<std::string>();
    a.problem = field(j, "problem", "artifact");
    a.payload = field(j, "payload", "artifact");
    a.metadata = j.value("metadata", Json::object());
    return a;
}

DesignArtifact load_artifact(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return artifact_from_json(Json::parse(text));
    } catch (const Json::exception& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

Json matched_payload(const MatchedWavelet& psi) {
    const FrameBounds& b = psi.bounds();
    // Roots are informational: long or badly scaled truncations record why they are missing.
    Json roots = Json::array();
    Json circle = nullptr;
    std::string status = "ok";
    const auto coeffs = psi.symbol().algebraic_coefficients();
    if (coeffs.size() < 2) {
        status = "degree 0";
    } else if (coeffs.size() > 1025) {
        status = "skipped: degree above 1024";
    } else {
        try {
            const RootSet rs = polynomial_roots(coeffs);
            for (cplx r : rs.roots) roots.push_back(Json::array({format_double(r.real()), format_double(r.imag())}));
            circle = format_double(rs.min_circle_distance);
        } catch (const RootSolveError& e) {
            status = std::string("unresolved: ") + e.what();
        }
    }
    return Json{{"kind", "matched"},
                {"gamma", gamma_to_json(psi.gamma())},
                {"symbol_truncation_error", format_double(psi.symbol().truncation_error())},
                {"bounds",
                 {{"lower", format_double(b.lower)},
                  {"upper", format_double(b.upper)},
                  {"argmin", format_double(b.argmin)},
                  {"argmax", format_double(b.argmax)},
                  {"uncertainty", format_double(b.uncertainty)},
                  {"riesz", b.riesz}}},
                {"roots", roots},
                {"roots_status", status},
                {"min_circle_distance", circle}};
}

Json meyer_payload(const MeyerDesign& d) {
    const BellCoefficients& bell = d.model.bell();
    const DataSequence stored =
        d.gamma.is_finite() ? d.gamma : d.gamma.truncated(d.admissibility.truncation_index);
    return Json{{"kind", "meyer"},
                {"gamma", gamma_to_json(stored)},
                {"h_hat", doubles_to_json(bell.coefficients)},
                {"h_error_bounds", doubles_to_json(bell.error_bounds)},
                {"abs_tail_bound", format_double(bell.abs_tail_bound)},
                {"derivative_tail_bound", format_double(bell.derivative_tail_bound)},
                {"max_recurrence_residual", format_double(bell.max_recurrence_residual)},
                {"admissibility", admissibility_to_json(d.admissibility)},
                {"grid_admitted", d.grid_admitted},
                {"grid_max_abs_h", format_double(d.model.grid_max_abs_h())}};
}

MatchedWavelet matched_from_payload(const Json& payload, const ProblemSpec& spec) {
    if (payload.value("kind", "") != "matched") bad("payload.kind", "expected \"matched\"");
    return design_matched(parse_gamma(field(payload, "gamma", "payload")), spec.matched_options());
}

MeyerWaveletModel meyer_from_payload(const Json& payload, const ProblemSpec& spec) {
    if (payload.value("kind", "") != "meyer") bad("payload.kind", "expected \"meyer\"");
    BellCoefficients bell;
    bell.coefficients = parse_doubles(field(payload, "h_hat", "payload"), "payload.h_hat");
    bell.error_bounds = parse_doubles(field(payload, "h_error_bounds", "payload"), "payload.h_error_bounds");
    bell.abs_tail_bound = number_at(payload, "abs_tail_bound", "payload");
    bell.derivative_tail_bound = number_at(payload, "derivative_tail_bound", "payload");
    bell.max_recurrence_residual = number_at(payload, "max_recurrence_residual", "payload");
    if (bell.coefficients.empty()) bad("payload.h_hat", "empty");
    return build_meyer(std::move(bell), spec.meyer_options().model);
}

Json report_to_json(const VerificationReport& r) {
    Json checks = Json::array();
    for (const Check& c : r.checks) {
        Json e{{"name", c.name},
               {"passed", c.passed},
               {"required", c.required},
               {"measured", number_json(c.measured)},
               {"target", number_json(c.target)},
               {"tolerance", number_json(c.tolerance)},
               {"comparison", to_string(c.comparison)},
               {"oracle", c.oracle}};
        if (!c.note.empty()) e["note"] = c.note;
        checks.push_back(std::move(e));
    }
    return Json{{"schema", kSchemaVersion}, {"subject", r.subject}, {"passed", r.passed()}, {"checks", checks}};
}

VerificationReport report_from_json(const Json& j) {
    VerificationReport r;
    try {
        r.subject = j.at("subject").get<std::string>();
        for (const Json& e : j.at("checks")) {
            Check c;
            c.name = e.at("name").get<std::string>();
            c.passed = e.at("passed").get<bool>();
            c.required = e.value("required", true);
            c.measured = parse_double(e.at("measured"));
            c.target = parse_double(e.at("target"));
            c.tolerance = parse_double(e.at("tolerance"));
            c.comparison = comparison_from_string(e.at("comparison").get<std::string>());
            c.oracle = e.value("oracle", "");
            c.note = e.value("note", "");
            r.checks.push_back(std::move(c));
        }
    } catch (const Json::exception& e) {
        throw InvalidInput(std::string("report: ") + e.what());
    }
    return r;
}

std::string render_report(const VerificationReport& r) {
    std::ostringstream out;
    out << r.subject << "\n";
    for (const Check& c : r.checks) {
        const char* verdict = c.passed ? "PASS" : (c.required ? "FAIL" : "info");
        char line[256];
        std::snprintf(line, sizeof line, "  %-4s %-32s measured %-12.6g %-8s %-12.6g tol %.1e", verdict,
                      c.name.c_str(), c.measured, to_string(c.comparison).c_str(), c.target, c.tolerance);
        out << line;
        if (!c.note.empty()) out << "  (" << c.note << ")";
        out << "\n";
    }
    out << (r.passed() ? "overall: PASS" : "overall: FAIL") << "\n";
    return out.str();
}

void write_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidInput("cannot write " + tmp.string());
        out << contents;
        out.flush();
        if (!out) throw InvalidInput("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw InvalidInput("cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace matchlet
