#ifndef MATCHLET_PROBLEM_HPP
#define MATCHLET_PROBLEM_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "matchlet/matched_riesz.hpp"
#include "matchlet/meyer.hpp"
#include "matchlet/suite.hpp"

namespace matchlet {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "matchlet/1";
inline constexpr const char* kQuadratureEnv = "MATCHLET_QUADRATURE";

enum class Lattice { half_integer, meyer3 };

std::string to_string(Lattice lattice);
Lattice lattice_from_string(const std::string& s);

/*
 * Problem file, schema "matchlet/1":
 *
 *   {
 *     "schema": "matchlet/1",
 *     "lattice": "half-integer" | "meyer3",
 *     "gamma": [1, 0.5]
 *            | {"offset": -1, "values": [1, [0.5, -0.25], "0.125"]}
 *            | {"generator": "power" | "geometric", "scale": 1, "exponent": 3 | "ratio": 0.5,
 *               "two_sided": false, "offset": 0, "head": [...], "certificate": {"constant": C, "epsilon": e}},
 *     "suite": "default",
 *     "tolerances": {...},
 *     "quadrature": {...},
 *     "output": {"artifact": "...", "report": "..."}
 *   }
 *
 * Values are numbers, decimal strings, or [re, im] pairs. Missing quadrature
 * fields fall back to the MATCHLET_QUADRATURE environment variable (a JSON
 * object of the same shape) and then to the built-in defaults.
 */
struct Tolerances {
    double positivity = 1e-10;
    double truncation = 1e-12;
    double admissibility = 1e-10;
    double bound = 1e-12;
    double identity = 1e-10;
    int grid_density = 4096;
    long meyer_truncation = kDefaultMeyerTruncation;
    bool operator==(const Tolerances&) const = default;
};

struct ProblemSpec {
    Lattice lattice = Lattice::half_integer;
    Json gamma_json;  // as written, echoed into artifacts
    DataSequence gamma;
    std::string suite = "default";
    Tolerances tolerances;
    QuadratureSpec quadrature;
    std::optional<std::string> artifact_path;
    std::optional<std::string> report_path;

    MatchedOptions matched_options() const;
    MeyerDesignOptions meyer_options() const;
};

/// Throws InvalidInput with a path-like diagnostic on schema violations.
ProblemSpec parse_problem(const Json& j);
ProblemSpec load_problem(const std::string& path);
Json problem_to_json(const ProblemSpec& spec);

/// Sequence parsing shared by the problem file and artifacts.
DataSequence parse_gamma(const Json& j);
/// Finite data as {"offset": N1, "values": [...]} with 17-digit decimal strings.
Json gamma_to_json(const DataSequence& gamma);

/// Quadrature defaults after applying the environment override.
QuadratureSpec default_quadrature();
QuadratureSpec parse_quadrature(const Json& j, QuadratureSpec base);
Json quadrature_to_json(const QuadratureSpec& q);

std::string format_double(double v);  // "%.17g"
double parse_double(const Json& j);   // number or decimal string

/*
 * Persisted design. `payload` holds the designed coefficients with every
 * double written as a 17-digit decimal string, so parsing it back gives the
 * same bits.
 */
struct DesignArtifact {
    std::string format = kSchemaVersion;
    Json problem;   // problem echo
    Json payload;   // designed coefficients
    Json metadata;  // tool name and version, suite, source file
    bool operator==(const DesignArtifact&) const = default;
};

Json artifact_to_json(const DesignArtifact& artifact);
DesignArtifact artifact_from_json(const Json& j);
DesignArtifact load_artifact(const std::string& path);

Json matched_payload(const MatchedWavelet& psi);
Json meyer_payload(const MeyerDesign& design);

/// Rebuilds sampling models from a payload without redesigning.
MatchedWavelet matched_from_payload(const Json& payload, const ProblemSpec& spec);
MeyerWaveletModel meyer_from_payload(const Json& payload, const ProblemSpec& spec);

Json report_to_json(const VerificationReport& report);
VerificationReport report_from_json(const Json& j);
std::string render_report(const VerificationReport& report);

/// Writes to `path.tmp` and renames over `path`.
void write_atomic(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace matchlet

#endif  // MATCHLET_PROBLEM_HPP
