#pragma once

#include <string>
#include <vector>

namespace isle {

// One acceptance check: fixed configuration, fixed seed, pinned tolerance.
struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// All selectors in execution order.
const std::vector<std::string>& criterion_names();

// Runs one criterion; throws std::invalid_argument for unknown selectors.
CriterionResult run_criterion(const std::string& name, unsigned jobs = 0);

// Empty list or the single selector "all" runs everything.
std::vector<CriterionResult> run_criteria(const std::vector<std::string>& selectors,
                                          unsigned jobs = 0);

}  // namespace isle
