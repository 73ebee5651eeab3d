#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "geonoether/cli.hpp"

using namespace geonoether;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
    std::string path = std::string("/tmp/geonoether_") + name;
    std::ofstream f(path);
    f << body;
    return path;
}

const char* kFileScenario = R"json({
  "schema_version": 1,
  "name": "flat-plane",
  "metric": {
    "coordinates": ["x", "y"],
    "components": [["1", "0"], ["0", "1"]],
    "signature": [1, 1]
  },
  "potential": "x^2 + y^2",
  "vectors": {
    "rotation": {"xi": "0", "eta": ["y", "-x"]},
    "shift": {"xi": "0", "eta": ["1", "0"]}
  },
  "check": {"box": {"lo": [-1, -1], "hi": [1, 1]}, "time": [0, 1],
             "samples": 120, "seed": 0, "tol": 1e-8},
  "simulate": {"x0": [1, 0], "v0": [0, 1], "t_span": [0, 5], "method": "rk4", "step": 1e-3}
})json";

}  // namespace

TEST_CASE("catalog and solver commands print full tables") {
    auto r = run({"solve-killing", "--dim", "3", "--signature", "+++", "--kind", "KV"});
    CHECK(r.code == 0);
    CHECK(r.out.find("dimension 6") != std::string::npos);
    auto r2 = run({"catalog", "--space", "bianchi"});
    CHECK(r2.code == 0);
    for (const char* name : {"Y1", "Y2", "Y3", "Y4", "Y5", "Y6", "H"})
        CHECK(r2.out.find(name) != std::string::npos);
}

TEST_CASE("verify-collineation exit codes reflect the outcome") {
    auto ok = run({"verify-collineation", "--space", "sphere:K=1"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("FAIL") == std::string::npos);
}

TEST_CASE("noether-find lists the adapted rotation for the worked potential") {
    auto r = run({"noether-find", "--scenario", "sphere:K=1", "--potential",
                  "cos(theta)*sin(phi)"});
    CHECK(r.code == 0);
    CHECK(r.out.find("X = Y1") != std::string::npos);
    CHECK(r.out.find("p = 0") != std::string::npos);
}

TEST_CASE("lie-check and noether-check on registry scenarios") {
    CHECK(run({"lie-check", "--scenario", "newtonian:ermakov:m=4"}).code == 0);
    CHECK(run({"noether-check", "--scenario", "bianchi:II:zero"}).code == 0);
    // failing candidate: pure time dilation against a forced system
    auto bad = run({"lie-check", "--scenario", "sphere:K=1:row=1", "--xi", "t",
                    "--eta", "0,0"});
    CHECK(bad.code == 1);
}

TEST_CASE("scenario files drive the checkers") {
    std::string path = write_temp("plane.json", kFileScenario);
    auto r = run({"noether-check", "--scenario-file", path, "--vector", "rotation"});
    CHECK(r.code == 0);
    auto r2 = run({"noether-check", "--scenario-file", path, "--vector", "shift"});
    CHECK(r2.code == 1);  // translation is not a symmetry of the isotropic well
    auto r3 = run({"lie-check", "--scenario-file", path, "--vector", "rotation"});
    CHECK(r3.code == 0);
    auto missing = run({"noether-check", "--scenario-file", path, "--vector", "nope"});
    CHECK(missing.code == 2);
}

TEST_CASE("malformed scenario files exit with code two and a location") {
    std::string path = write_temp("broken.json", "{ \"schema_version\": 1, ");
    auto r = run({"lie-check", "--scenario-file", path});
    CHECK(r.code == 2);
    CHECK(r.err.find("parse error") != std::string::npos);
    std::string path2 = write_temp("badexpr.json", R"json({
      "schema_version": 1,
      "metric": {"coordinates": ["x"], "components": [["1 +"]]}
    })json");
    auto r2 = run({"lie-check", "--scenario-file", path2});
    CHECK(r2.code == 2);
}

TEST_CASE("simulate produces the fixed CSV layout") {
    std::string out_path = "/tmp/geonoether_traj.csv";
    auto r = run({"simulate", "--scenario", "sphere:K=1:row=3", "--t1", "0.1", "--out",
                  out_path});
    CHECK(r.code == 0);
    std::ifstream f(out_path);
    std::string header;
    std::getline(f, header);
    CHECK(header.rfind("t, x1, x2, v1, v2, E", 0) == 0);
}

TEST_CASE("conserve-check enforces the drift bound") {
    auto r = run({"conserve-check", "--scenario", "sphere:K=1:row=1", "--t1", "5",
                  "--max-drift", "1e-7"});
    CHECK(r.code == 0);
    CHECK(r.out.find("pass") != std::string::npos);
    auto strict = run({"conserve-check", "--scenario", "sphere:K=1:row=1", "--t1", "5",
                       "--max-drift", "1e-18"});
    CHECK(strict.code == 1);
}

TEST_CASE("reports are deterministic and cover every row") {
    auto a = run({"report", "--table", "flat"});
    auto b = run({"report", "--table", "flat"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("seed: 0") != std::string::npos);

    auto sphere = run({"report", "--table", "sphere"});
    CHECK(sphere.code == 0);
    for (int row = 1; row <= 7; ++row) {
        std::string tag = "| " + std::to_string(row) + " | 1 |";
        INFO("row " << row);
        CHECK(sphere.out.find(tag) != std::string::npos);
    }
    CHECK(sphere.out.find("symmetry counts") != std::string::npos);

    auto bianchi = run({"report", "--table", "bianchi"});
    CHECK(bianchi.code == 0);
    for (const char* type : {"I", "II", "VI0", "VII0", "VIII", "IX"})
        for (const char* fam : {"vacuum", "zero", "constant", "arbitrary"}) {
            std::string tag = std::string("| bianchi:") + type + ":" + fam + " |";
            INFO(tag);
            CHECK(bianchi.out.find(tag) != std::string::npos);
        }
    CHECK(bianchi.out.find("bianchi:I:exponential") != std::string::npos);
    CHECK(bianchi.out.find("bianchi:VI0:exponential") != std::string::npos);
}

TEST_CASE("seed environment override is honored") {
    setenv("GEONOETHER_SEED", "7", 1);
    auto r = run({"report", "--table", "flat"});
    unsetenv("GEONOETHER_SEED");
    CHECK(r.out.find("seed: 7") != std::string::npos);
}

TEST_CASE("usage errors exit with code two") {
    CHECK(run({}).code == 2);
    CHECK(run({"report", "--table", "unknown-table"}).code == 2);
    CHECK(run({"lie-check"}).code == 2);  // no scenario
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("repeated simulate invocations are byte-identical") {
    auto once = [] {
        return run({"simulate", "--scenario", "newtonian:noetherB1", "--t1", "0.5"});
    };
    auto a = once();
    auto b = once();
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}
