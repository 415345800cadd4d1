// Copyright 2026 The msqueeze developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Self-verification suite: every structural invariant of the library is
// re-measured at runtime and reported as a named residual against a pinned
// tolerance. The suite is what `msqueeze verify` runs.

#ifndef MSQUEEZE_VERIFY_HPP
#define MSQUEEZE_VERIFY_HPP

#include <functional>
#include <string>
#include <vector>

#include "msqueeze/linalg.hpp"
#include "msqueeze/oracle.hpp"

namespace msq {

/// One verified property: the measured residual against its tolerance.
struct CheckResult {
    std::string name;
    double tolerance = 0.0;
    double residual = 0.0;
    bool pass = false;
    /// Failure detail (exception text); empty on clean runs.
    std::string note;
};

/// Injection points for the verification suite. The defaults measure the
/// production code; tests substitute corrupted inputs to prove that the
/// suite actually detects violations.
struct VerifyHooks {
    /// Source of the antisymmetric form used by every symplectic check.
    std::function<Matrix(Eigen::Index)> omega = [](Eigen::Index modes) {
        return symplectic_form(modes);
    };
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_passed = false;
    double seconds = 0.0;
};

/// Runs every registered invariant check under the given budget. The report
/// lists one entry per property with its tolerance and measured residual.
VerifyReport run_verification(const OracleBudget& budget = OracleBudget(),
                              const VerifyHooks& hooks = VerifyHooks());

}  // namespace msq

#endif
