#pragma once

#include <string>
#include <vector>

#include "geonoether/scenarios.hpp"

namespace geonoether {

struct EntryResult {
    std::string name;
    std::string provenance;
    std::string kind;  // "lie" or "noether"
    bool negative_control = false;
    double residual = 0.0;
    bool pass = false;  // for controls: pass means the control failed as required
};

EntryResult check_expected(const Scenario& s, const ExpectedSymmetry& e,
                           const std::vector<Sample>& samples, double tol);

// Case-I finder output vs the scenario's expected generator span (numeric
// rank comparison over the catalog coefficient vectors).
bool finder_matches_expected(const Scenario& s, unsigned seed, std::string* detail);

struct ReportResult {
    std::string markdown;
    bool all_pass = false;
};

ReportResult report_flat(unsigned seed);
ReportResult report_sphere(unsigned seed);
ReportResult report_bianchi(unsigned seed);
ReportResult report_newtonian(unsigned seed);

}  // namespace geonoether
