// verify.hpp — built-in invariant suite behind the `verify` CLI command.

#pragma once

#include <string>
#include <vector>

namespace rabinls {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Fast self-checks: transform round trips, conservation on a short run, the
// analytic linear flow, virial consistency, and the split-nonlinearity
// identity on random fields. Runs in a few seconds.
std::vector<CheckResult> run_verification_suite();

}  // namespace rabinls
