#pragma once

#include <stdexcept>
#include <string>

namespace catlab {

// An improper integral (or limit process) was detected to diverge.
struct divergence_error : std::runtime_error {
    explicit divergence_error(const std::string& what) : std::runtime_error(what) {}
};

// A numerical procedure failed to reach its accuracy contract.
// `best` carries the best estimate obtained before giving up.
struct accuracy_error : std::runtime_error {
    double best;
    explicit accuracy_error(const std::string& what, double best_estimate = 0.0)
        : std::runtime_error(what), best(best_estimate) {}
};

// Root bracketing precondition f(lo)*f(hi) <= 0 violated.
struct bracket_error : std::invalid_argument {
    explicit bracket_error(const std::string& what) : std::invalid_argument(what) {}
};

// A geometric construction failed (e.g. a normal line missing the opposite sheet).
struct geometry_error : std::runtime_error {
    explicit geometry_error(const std::string& what) : std::runtime_error(what) {}
};

// Operation asked of a fixture that does not support it.
struct fixture_error : std::invalid_argument {
    explicit fixture_error(const std::string& what) : std::invalid_argument(what) {}
};

// Parameters outside the asymptotic regime an estimate is stated for.
struct regime_error : std::domain_error {
    explicit regime_error(const std::string& what) : std::domain_error(what) {}
};

}  // namespace catlab
