#pragma once

// Cross-validation suite: one named check per acceptance criterion, plus
// per-problem consistency checks used by `heatkern verify --problem`.

#include <string>
#include <vector>

#include "heatkern/oracle.hpp"

namespace heatkern {

struct CheckResult {
    int id = 0;            // criterion number; 0 for problem checks
    std::string name;
    bool passed = false;
    bool applicable = true;
    std::string detail;    // measured quantities, deterministic
    double seconds = 0;    // wall time, kept out of `detail`
};

/// Criterion ids 1..10.
std::vector<int> acceptance_ids();

/// Runs a single criterion. Numerical failures inside a check (resolution
/// refusals, blow-ups) are reported as a failed check, not thrown.
CheckResult run_criterion(int id);

std::vector<CheckResult> run_acceptance(const std::vector<int>& ids);

/// Consistency checks for a user problem: small-t trace vs invariants,
/// the two zeta routes, and for constant potentials the sinh-product
/// determinant.
std::vector<CheckResult> run_problem_checks(const SpectralProblem& problem);

/// "PASS  5 determinant-benchmark  <detail>"; timing appended on request.
std::string format_check(const CheckResult& r, bool with_time = false);

}  // namespace heatkern
