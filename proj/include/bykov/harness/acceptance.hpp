#pragma once

#include <string>
#include <vector>

namespace bykov::harness {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

inline constexpr int kCriterionCount = 8;

/// Evaluates one acceptance criterion (1..8) on the reference system.
CriterionResult run_criterion(int id);

/// Evaluates all criteria concurrently; results are ordered by id. Criterion 7 also
/// carries the wall-clock budget of the whole run.
std::vector<CriterionResult> run_acceptance();

/// "[PASS] 3 perturbed lemma limits (0.012s): ..." style line.
std::string format_result(const CriterionResult& r);

} // namespace bykov::harness
