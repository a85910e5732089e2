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


#include "mixrg/runner/verify.h"

#include <algorithm>
#include <cmath>
#include "json.hpp"
#include <random>
#include <sstream>

#include "mixrg/flow/flowmaps.h"
#include "mixrg/lab/channels.h"
#include "mixrg/matching/mwpm.h"

namespace mixrg {

namespace {

std::string fmt(const char *name, double v) {
    std::ostringstream ss;
    ss << name << "=" << v;
    return ss.str();
}

CMatrix projector(int n, int index) {
    CMatrix m = CMatrix::Zero(int64_t{1} << n, int64_t{1} << n);
    m(index, index) = 1;
    return m;
}

}  // namespace

bool VerifyReport::passed() const {
    return failures() == 0;
}

size_t VerifyReport::failures() const {
    return static_cast<size_t>(std::count_if(checks.begin(), checks.end(), [](const CheckResult &c) { return !c.passed; }));
}

std::string VerifyReport::to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["passed"] = passed();
    j["failures"] = failures();
    j["checks"] = nlohmann::ordered_json::array();
    for (const CheckResult &c : checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["measured"] = c.measured;
        e["comparison"] = c.comparison;
        e["tolerance"] = c.tolerance;
        e["passed"] = c.passed;
        if (!c.detail.empty()) {
            e["detail"] = c.detail;
        }
        j["checks"].push_back(e);
    }
    return j.dump(2);
}

CheckResult check_at_most(std::string name, double measured, double tolerance, std::string detail) {
    return CheckResult{std::move(name), measured, tolerance, "<=", measured <= tolerance, std::move(detail)};
}

CheckResult check_at_least(std::string name, double measured, double tolerance, std::string detail) {
    return CheckResult{std::move(name), measured, tolerance, ">=", measured >= tolerance, std::move(detail)};
}

VerifyReport run_lab_suite() {
    VerifyReport r;
    r.suite = "lab";
    auto &c = r.checks;

    c.push_back(check_at_most("mutual_information.bell_pair", std::abs(mutual_information(bell_pair(), {0}) - 2.0), 1e-12));
    DenseState product(kron(projector(1, 0), projector(1, 1)), 2);
    c.push_back(check_at_most("mutual_information.product", std::abs(mutual_information(product, {0})), 1e-12));
    DenseState classical((projector(3, 0) + projector(3, 7)) * 0.5, 3);
    c.push_back(check_at_most("mutual_information.classical_ghz", std::abs(mutual_information(classical, {0}) - 1.0), 1e-12));

    CMatrix plus = CMatrix::Constant(2, 2, 0.5);
    DenseState damped = apply_channel(reset_channel(), DenseState(plus, 1), {0});
    c.push_back(check_at_most("apply_channel.reset", (damped.matrix() - projector(1, 0)).cwiseAbs().maxCoeff(), 1e-14));

    for (int b : {3, 5}) {
        for (double p : {0.1, 0.3, 0.49}) {
            DenseChannel lhs =
                compose(majority_vote_channel(b), compose(tensor_power(x_dephasing(p), b), repetition_encoding(b)));
            DenseChannel rhs = x_dephasing(ghz_x_step(p, b));
            c.push_back(check_at_most("majority_vote.renormalized_dephasing b=" + std::to_string(b) + fmt(" p", p),
                                      superoperator_distance(lhs, rhs), 1e-10));
        }
    }

    for (double p : {0.1, 0.3}) {
        DenseState rho = build_state(StateKind::GhzZ, p, 6);
        RecoveryReport rep = correlation_preserving_test(majority_vote_channel(3), rho, {0, 1, 2});
        std::string tag = fmt(" p", p);
        c.push_back(check_at_most("recovery.phase_flip_epsilon" + tag, std::abs(rep.epsilon), 1e-9));
        c.push_back(check_at_least("recovery.phase_flip_petz_fidelity" + tag, rep.fidelity, 1 - 1e-9));
        DenseState back = apply_and_recover(majority_vote_channel(3), repetition_encoding(3), rho, {0, 1, 2});
        c.push_back(check_at_least("recovery.phase_flip_encoding_fidelity" + tag, fidelity(rho.matrix(), back.matrix()),
                                   1 - 1e-9));
    }
    {
        RecoveryReport rep =
            correlation_preserving_test(majority_vote_channel(3), build_state(StateKind::GhzX, 0.2, 6), {0, 1, 2});
        c.push_back(check_at_least("recovery.bit_flip_loses_correlation", rep.epsilon, 1e-6,
                                   fmt("petz_fidelity", rep.fidelity) + " " + fmt("reference_bound", rep.bound)));
        c.push_back(check_at_most("recovery.data_processing", rep.mi_after - rep.mi_before, 1e-9));
    }

    double worst_x = 0, worst_z = 0;
    for (int L = 2; L <= 8; L++) {
        for (double p : {0.1, 0.25, 0.4}) {
            double fx = fidelity(ghz_pure(L).matrix(), build_state(StateKind::GhzX, p, L).matrix());
            worst_x = std::max(worst_x, std::abs(fx * fx - fidelity_formula(FidelityKind::GhzXVsPure, p, L)));
            double fz =
                fidelity(build_state(StateKind::GhzZ, 0.5, L).matrix(), build_state(StateKind::GhzZ, p, L).matrix());
            worst_z = std::max(worst_z, std::abs(fz * fz - fidelity_formula(FidelityKind::GhzZVsClassical, p, L)));
        }
    }
    c.push_back(check_at_most("fidelity.bit_flip_ghz_closed_form", worst_x, 1e-10, "L=2..8, p in {0.1,0.25,0.4}"));
    c.push_back(check_at_most("fidelity.phase_flip_ghz_closed_form", worst_z, 1e-10, "L=2..8, p in {0.1,0.25,0.4}"));

    std::vector<int> all{0, 1, 2, 3, 4, 5, 6, 7};
    for (double beta : {0.3, 1.0}) {
        ThermalChannels ch = thermal_tc_channels(beta);
        DenseState rho = build_state(StateKind::Thermal, beta, 2);
        DenseState back = apply_channel(ch.reverse, apply_channel(ch.coarse, rho, all), all);
        c.push_back(check_at_most("thermal.reversal" + fmt(" beta", beta), trace_distance(back.matrix(), rho.matrix()),
                                  1e-9));
    }
    return r;
}

VerifyReport run_matching_oracle_suite(int instances, bool inject_weight_bug) {
    VerifyReport r;
    r.suite = "matching-oracle";
    std::mt19937_64 rng(0x5EED);
    int mismatches = 0, invalid = 0;
    for (int t = 0; t < instances; t++) {
        int L = 2 + 2 * static_cast<int>(rng() % 8);
        bool region = t % 2 == 1;
        Region reg{{static_cast<int>(rng() % L), static_cast<int>(rng() % L)}, 1 + static_cast<int>(rng() % L)};
        int capacity = region ? reg.side * reg.side : L * L;
        int n = std::min(static_cast<int>(rng() % 11), capacity);
        if (!region && n % 2) {
            n--;
        }
        std::vector<Plaquette> nodes;
        while (static_cast<int>(nodes.size()) < n) {
            Plaquette p = region ? Plaquette{(reg.origin.row + static_cast<int>(rng() % reg.side)) % L,
                                             (reg.origin.col + static_cast<int>(rng() % reg.side)) % L}
                                 : Plaquette{static_cast<int>(rng() % L), static_cast<int>(rng() % L)};
            if (std::find(nodes.begin(), nodes.end(), p) == nodes.end()) {
                nodes.push_back(p);
            }
        }
        MatchingProblem problem =
            region ? MatchingProblem::truncated(L, reg, nodes) : MatchingProblem::torus(L, nodes);
        Matching fast = solve_mwpm(problem);
        if (inject_weight_bug && n > 0) {
            fast.weight += 1;
        }
        Matching slow = brute_force_mwpm(problem);
        if (fast.weight != slow.weight) {
            mismatches++;
        }
        try {
            validate_matching(problem, fast);
        } catch (const std::logic_error &) {
            invalid++;
        }
    }
    std::string detail = std::to_string(instances) + " random instances, <= 10 anyons, L <= 16";
    r.checks.push_back(check_at_most("matching.optimality_mismatches", mismatches, 0, detail));
    r.checks.push_back(check_at_most("matching.invalid_outputs", invalid, 0, detail));
    return r;
}

std::vector<VerifyReport> run_suite(std::string_view name, bool inject_weight_bug) {
    if (name == "lab") {
        return {run_lab_suite()};
    }
    if (name == "matching-oracle") {
        return {run_matching_oracle_suite(500, inject_weight_bug)};
    }
    if (name == "all") {
        return {run_lab_suite(), run_matching_oracle_suite(500, inject_weight_bug)};
    }
    throw std::invalid_argument("unknown suite '" + std::string(name) + "' (expected lab, matching-oracle or all)");
}

}  // namespace mixrg
