#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "matchlet/cli.hpp"
#include "matchlet/problem.hpp"
#include "oracles.hpp"

using namespace matchlet;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "matchlet");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& contents = {}) const {
        const std::string p = (path / name).string();
        if (!contents.empty()) write_atomic(p, contents);
        return p;
    }
};

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

double csv_value(const std::string& line) { return std::stod(line.substr(line.find(',') + 1)); }

const std::string kMeyerSpec = R"({"schema":"matchlet/1","lattice":"meyer3","gamma":["0.60355339059327373","-0.034517796864424598"]})";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("design the worked matched case") {
    TempDir d("matchlet_cli_design");
    const auto spec = d.file("p.json", R"({"schema":"matchlet/1","lattice":"half-integer","gamma":[1,0.5]})");
    const Run r = run({"design", "--spec", spec});
    CHECK(r.code == 0);
    const DesignArtifact a = load_artifact(d.file("p.artifact.json"));
    CHECK(std::abs(parse_double(a.payload["bounds"]["lower"]) - 0.25) < 1e-9);
    CHECK(std::abs(parse_double(a.payload["bounds"]["upper"]) - 2.25) < 1e-9);
    CHECK(report_from_json(Json::parse(read_file(d.file("p.report.json")))).passed());
}

TEST_CASE("design rejects (1, 1) and still writes the report") {
    TempDir d("matchlet_cli_reject");
    const auto spec = d.file("p.json", R"({"lattice":"half-integer","gamma":[1,1]})");
    const auto report = d.file("rep.json");
    const Run r = run({"design", "--spec", spec, "--report", report, "--out", d.file("a.json")});
    CHECK(r.code == 1);
    CHECK_FALSE(fs::exists(d.file("a.json")));
    const std::string text = read_file(report);
    CHECK(text.find("(-1") != std::string::npos);
}

TEST_CASE("design the worked Meyer case") {
    TempDir d("matchlet_cli_meyer");
    const auto spec = d.file("m.json", kMeyerSpec);
    CHECK(run({"design", "--spec", spec}).code == 0);
    const DesignArtifact a = load_artifact(d.file("m.artifact.json"));
    CHECK(std::abs(parse_double(a.payload["h_hat"][0]) - oracle::frozen::meyer_h0) < 1e-12);
    CHECK(std::abs(parse_double(a.payload["h_hat"][1]) - oracle::frozen::meyer_h1) < 1e-12);

    const Run s = run({"sample", "--artifact", d.file("m.artifact.json"), "--t-min", "3.5", "--t-max", "3.5", "--points", "1"});
    CHECK(s.code == 0);
    const auto rows = lines(s.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "t,value");
    CHECK(std::abs(csv_value(rows[1]) - oracle::frozen::meyer_gamma1) < 1e-8);
}

TEST_CASE("sample the cardinal wavelet") {
    TempDir d("matchlet_cli_sample");
    const auto spec = d.file("c.json", R"({"lattice":"half-integer","gamma":[1]})");
    REQUIRE(run({"design", "--spec", spec}).code == 0);
    const auto art = d.file("c.artifact.json");
    const Run one = run({"sample", "--artifact", art, "--t-min", "0.5", "--t-max", "0.5", "--points", "1"});
    const auto rows = lines(one.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].rfind("0.5,", 0) == 0);
    CHECK(std::abs(csv_value(rows[1]) - 1.0) < 1e-12);

    const Run none = run({"sample", "--artifact", art, "--t-min", "0", "--t-max", "1", "--points", "0"});
    CHECK(none.code == 0);
    CHECK(none.out == "t,value\n");

    const auto csv = d.file("s.csv");
    CHECK(run({"sample", "--artifact", art, "--t-min", "-1", "--t-max", "1", "--points", "5", "--out", csv}).code == 0);
    const auto body = lines(read_file(csv));
    REQUIRE(body.size() == 6);
    CHECK(body[1].rfind("-1,", 0) == 0);
    CHECK(body[5].rfind("1,", 0) == 0);

    CHECK(run({"sample", "--artifact", d.file("missing.json"), "--t-min", "0", "--t-max", "1", "--points", "2"}).code == 2);
    CHECK(run({"sample", "--artifact", art, "--t-min", "1", "--t-max", "0", "--points", "2"}).code == 2);
}

TEST_CASE("complex data sample with an imaginary column") {
    TempDir d("matchlet_cli_complex");
    const auto spec = d.file("z.json", R"({"lattice":"half-integer","gamma":[[1,0],[0,0.5]]})");
    REQUIRE(run({"design", "--spec", spec}).code == 0);
    const Run s = run({"sample", "--artifact", d.file("z.artifact.json"), "--t-min", "1.5", "--t-max", "1.5", "--points", "1"});
    const auto rows = lines(s.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "t,value,value_im");
    CHECK(std::abs(std::stod(rows[1].substr(rows[1].rfind(',') + 1)) - 0.5) < 1e-10);
}

TEST_CASE("perturb the corollary case") {
    TempDir d("matchlet_cli_perturb");
    const auto spec = d.file("p.json", R"({"lattice":"half-integer","gamma":[1,1]})");
    const auto out = d.file("q.json");
    const Run r = run({"perturb", "--spec", spec, "--delta", "0.05", "--out", out});
    CHECK(r.code == 0);
    const ProblemSpec q = load_problem(out);
    CHECK(q.gamma[0] == cplx(1.0));
    CHECK(std::abs(q.gamma[1].real() - oracle::frozen::perturbed_gamma1) < 1e-15);
    CHECK(run({"design", "--spec", out}).code == 0);
    const DesignArtifact a = load_artifact(d.file("q.artifact.json"));
    CHECK(std::abs(parse_double(a.payload["bounds"]["lower"]) - oracle::frozen::perturbed_lower) < 1e-9);
}

TEST_CASE("perturb corner cases") {
    TempDir d("matchlet_cli_perturb2");
    const auto far = d.file("f.json", R"({"lattice":"half-integer","gamma":[1,0.5]})");
    const Run r = run({"perturb", "--spec", far, "--delta", "0.05"});
    CHECK(r.code == 0);
    CHECK(r.out.find("no on-circle roots") != std::string::npos);
    CHECK(load_problem(d.file("f.perturbed.json")).gamma.values() == load_problem(far).gamma.values());

    const auto single = d.file("s.json", R"({"lattice":"half-integer","gamma":[1]})");
    CHECK(run({"perturb", "--spec", single, "--delta", "0.05"}).code == 2);
    const auto meyer = d.file("m.json", kMeyerSpec);
    CHECK(run({"perturb", "--spec", meyer, "--delta", "0.05"}).code == 2);
    CHECK(run({"perturb", "--spec", far}).code == 2);
}

TEST_CASE("feasible projection") {
    TempDir d("matchlet_cli_feasible");
    const auto zero = d.file("z.json", R"({"lattice":"meyer3","gamma":[]})");
    const auto out = d.file("z1.json");
    CHECK(run({"feasible", "--spec", zero, "--free", "0,1", "--out", out}).code == 0);
    const ProblemSpec p = load_problem(out);
    CHECK(std::abs(p.gamma[0].real() - oracle::frozen::meyer_gamma0) < 1e-15);
    CHECK(std::abs(p.gamma[1].real() - oracle::frozen::meyer_gamma1) < 1e-15);
    CHECK(run({"design", "--spec", out}).code == 0);

    const auto again = d.file("z2.json");
    CHECK(run({"feasible", "--spec", out, "--free", "0,1", "--out", again}).code == 0);
    const ProblemSpec q = load_problem(again);
    CHECK(std::abs(q.gamma[0].real() - p.gamma[0].real()) < 1e-12);
    CHECK(std::abs(q.gamma[1].real() - p.gamma[1].real()) < 1e-12);

    const Run singular = run({"feasible", "--spec", zero, "--free", "1,3"});
    CHECK(singular.code == 1);
    CHECK(singular.err.find("suggestion") != std::string::npos);

    CHECK(run({"feasible", "--spec", zero, "--free", "2,4"}).code == 0);
    const auto heavy = d.file("w.json", R"({"lattice":"meyer3","gamma":[0,0,0.5]})");
    const Run warned = run({"feasible", "--spec", heavy, "--free", "0,1"});
    CHECK(warned.code == 0);
    CHECK(warned.err.find("warning") != std::string::npos);

    const auto matched = d.file("h.json", R"({"lattice":"half-integer","gamma":[1]})");
    CHECK(run({"feasible", "--spec", matched, "--free", "0,1"}).code == 2);
}

TEST_CASE("verify reproduces the report bit for bit") {
    TempDir d("matchlet_cli_verify");
    for (const std::string& text : {std::string(R"({"lattice":"half-integer","gamma":[1,0.5]})"), kMeyerSpec}) {
        const auto spec = d.file("v.json", text);
        REQUIRE(run({"design", "--spec", spec}).code == 0);
        const auto again = d.file("again.json");
        CHECK(run({"verify", "--artifact", d.file("v.artifact.json"), "--report", again}).code == 0);
        CHECK(read_file(again) == read_file(d.file("v.report.json")));
    }
}

TEST_CASE("verify flags a tampered payload") {
    TempDir d("matchlet_cli_tamper");
    const auto spec = d.file("t.json", R"({"lattice":"half-integer","gamma":[1,0.5]})");
    REQUIRE(run({"design", "--spec", spec, "--suite", "quick"}).code == 0);
    Json a = Json::parse(read_file(d.file("t.artifact.json")));
    a["payload"]["bounds"]["lower"] = "0.3";
    const auto bad = d.file("bad.json", a.dump());
    const Run r = run({"verify", "--artifact", bad, "--suite", "quick"});
    CHECK(r.code == 1);
    CHECK(r.out.find("artifact.payload_identical") != std::string::npos);
}

TEST_CASE("report rendering and usage errors") {
    TempDir d("matchlet_cli_usage");
    const auto spec = d.file("r.json", R"({"lattice":"half-integer","gamma":[1,1]})");
    run({"design", "--spec", spec});
    const Run r = run({"report", "--report", d.file("r.report.json")});
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);

    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"design"}).code == 2);
    CHECK(run({"design", "--spec", d.file("nope.json")}).code == 2);
    CHECK(run({"design", "--spec", d.file("broken.json", "{not json")}).code == 2);
    CHECK(run({"design", "--spec", spec, "--suite", "everything"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

}
