#pragma once

#include <string>
#include <vector>

namespace catlab::report {

// One verification check. The id prefix (c1..c9) names the criterion the
// check belongs to; `anchor` states the claim being tested.
struct Check {
    std::string id;
    std::string anchor;
    double value = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct Report {
    std::vector<Check> checks;
    int total() const { return static_cast<int>(checks.size()); }
    int passed() const;
    int failed() const { return total() - passed(); }
    bool all_pass() const { return failed() == 0; }
};

// Verification suite for dimension n (2..6); tolerances scale with tol_scale.
Report run_verify(int n, double tol_scale = 1.0);

std::string report_to_json(const Report& rep);
std::string report_to_csv(const Report& rep);

}  // namespace catlab::report
