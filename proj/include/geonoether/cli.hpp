#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "geonoether/scenarios.hpp"

namespace geonoether {

// Scenario loaded from a JSON file, plus its named candidate vectors.
struct FileScenario {
    Scenario scenario;
    std::map<std::string, SymmetryVector> vectors;
    std::map<std::string, Expr> gauges;
};

FileScenario load_scenario_file(const std::string& path);

// Runs a geonoether invocation; args exclude the program name. Output goes
// to `out`. Returns 0 on pass, 1 on check failure, 2 on usage/input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geonoether
