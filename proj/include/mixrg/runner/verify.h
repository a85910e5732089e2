// Copyright 2026 The mixrg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef MIXRG_RUNNER_VERIFY_H
#define MIXRG_RUNNER_VERIFY_H

#include <string>
#include <string_view>
#include <vector>

namespace mixrg {

/// One named check: `measured` is compared against `tolerance` in the
/// direction given by `comparison` ("<=" or ">=").
struct CheckResult {
    std::string name;
    double measured = 0;
    double tolerance = 0;
    std::string comparison = "<=";
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool passed() const;
    size_t failures() const;
    /// Pretty-printed JSON.
    std::string to_json() const;
};

CheckResult check_at_most(std::string name, double measured, double tolerance, std::string detail = "");
CheckResult check_at_least(std::string name, double measured, double tolerance, std::string detail = "");

/// Dense channel identities, recovery, closed-form fidelities and thermal
/// reversal.
VerifyReport run_lab_suite();

/// Blossom matching against exhaustive search on random instances. With
/// `inject_weight_bug` the solver's reported weight is perturbed by one unit
/// to demonstrate that the suite detects optimality failures.
VerifyReport run_matching_oracle_suite(int instances = 500, bool inject_weight_bug = false);

/// Suites by name: "lab", "matching-oracle" or "all". Throws
/// std::invalid_argument for other names.
std::vector<VerifyReport> run_suite(std::string_view name, bool inject_weight_bug = false);

}  // namespace mixrg

#endif
