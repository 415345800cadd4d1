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

#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "msqueeze/gaussian.hpp"
#include "msqueeze/verify.hpp"

using namespace msq;

namespace {

const std::vector<std::string> kExpectedChecks = {
    "symplectic-form-antisymmetry",
    "symplectic-form-square",
    "symplectic-rotation-invariance",
    "squeezed-vacuum-purity",
    "quadrature-moment-inverse-identity",
    "squeezed-vacuum-optimal-spectrum",
    "squeezing-witness-equivalence",
    "fisher-information-chain",
    "matrix-cauchy-schwarz",
    "spin-squeezing-oracle-agreement",
    "planar-minimizer-grid-agreement",
    "product-state-shot-noise-bound",
    "twin-fock-saturation",
    "mode-gain-baseline",
    "mode-gain-asymptote",
    "photon-allocation-uniform",
    "photon-allocation-order",
    "monte-carlo-central-limit",
    "estimator-fixed-point",
};

}  // namespace

TEST_CASE("the verification suite passes on a correct build") {
    OracleBudget budget;
    budget.random_trials = 64;  // residuals are scale-free; fewer trials keep it snappy
    const VerifyReport report = run_verification(budget);

    REQUIRE(report.checks.size() == kExpectedChecks.size());
    for (size_t i = 0; i < kExpectedChecks.size(); ++i) {
        CAPTURE(report.checks[i].name);
        CHECK(report.checks[i].name == kExpectedChecks[i]);
        CHECK(report.checks[i].pass);
        CHECK(report.checks[i].residual <= report.checks[i].tolerance);
        CHECK(report.checks[i].note.empty());
    }
    CHECK(report.all_passed);
    CHECK(report.seconds > 0.0);
    CHECK(report.seconds < 300.0);
}

TEST_CASE("a corrupted symplectic form is detected by the suite") {
    // Substituting a single flipped sign for the antisymmetric form must
    // trip every check that consumes it, and only those.
    VerifyHooks hooks;
    hooks.omega = [](Eigen::Index modes) {
        Matrix omega = symplectic_form(modes);
        omega(0, 1) = -omega(0, 1);
        return omega;
    };
    OracleBudget budget;
    budget.random_trials = 16;
    const VerifyReport report = run_verification(budget, hooks);

    CHECK_FALSE(report.all_passed);
    std::set<std::string> failed;
    for (const CheckResult& check : report.checks) {
        if (!check.pass) failed.insert(check.name);
    }
    const std::set<std::string> expected_failures = {
        "symplectic-form-antisymmetry",
        "symplectic-form-square",
        "symplectic-rotation-invariance",
        "squeezed-vacuum-purity",
        "quadrature-moment-inverse-identity",
    };
    CHECK(failed == expected_failures);
}

TEST_CASE("budget overrides propagate into the randomized checks") {
    OracleBudget small;
    small.random_trials = 8;
    small.fock_cutoff = 30;
    small.seed = 99;
    const VerifyReport report = run_verification(small);
    CHECK(report.all_passed);

    // Same budget and seed reproduce the exact residuals.
    const VerifyReport again = run_verification(small);
    REQUIRE(again.checks.size() == report.checks.size());
    for (size_t i = 0; i < report.checks.size(); ++i) {
        CHECK(again.checks[i].residual == report.checks[i].residual);
    }
}
