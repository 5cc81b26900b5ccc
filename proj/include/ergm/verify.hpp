#pragma once

#include <string>
#include <vector>

#include "ergm/asymptotics.hpp"

namespace ergm {

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

struct VerifyOptions {
    bool quick = false;        // skip checks that need n >= 1e5
    GammaFn gamma = nullptr;   // replaceable for negative controls
};

// Library-wide invariant suite: oracles, exact identities and rate checks.
std::vector<CheckResult> run_verification(const VerifyOptions& opts = {});

}  // namespace ergm
