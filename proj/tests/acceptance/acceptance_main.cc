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


#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mixrg/common/rng.h"
#include "mixrg/common/stats.h"
#include "mixrg/flow/flowmaps.h"
#include "mixrg/lab/channels.h"
#include "mixrg/lab/dense.h"
#include "mixrg/lattice/torus.h"
#include "mixrg/matching/mwpm.h"
#include "mixrg/rg/rg_decoder.h"
#include "mixrg/runner/sweep.h"
#include "mixrg/runner/verify.h"
#include "mixrg/tmwpm/tmwpm.h"

using namespace mixrg;

namespace {

constexpr uint64_t kSeed = 20260401;

struct Outcome {
    bool passed = false;
    std::string summary;
};

struct Criterion {
    std::string id;
    std::string title;
    /// Wall-clock budget in seconds; 0 means unbounded.
    double budget = 0;
    std::function<Outcome()> run;
};

std::string num(double v, int precision = 4) {
    std::ostringstream ss;
    ss << std::setprecision(precision) << v;
    return ss.str();
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2e", v);
    return buf;
}

std::string join(const std::vector<std::string> &parts, const std::string &sep) {
    std::string s;
    for (size_t i = 0; i < parts.size(); i++) {
        s += (i ? sep : "") + parts[i];
    }
    return s;
}

Outcome flow_consistency() {
    double worst = 0;
    for (int i = 0; i < 100; i++) {
        double beta = 1e-3 * std::pow(1e4, i / 99.0);
        double lhs = thermal_p_of_beta(thermal_beta_step(beta));
        double rhs = thermal_p_step(thermal_p_of_beta(beta));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return {worst <= 1e-12, "max |p(beta') - p'(p(beta))| = " + sci(worst) + " <= 1e-12 over 100 beta in [1e-3, 10]"};
}

const FixedPoint *find_point(const std::vector<FixedPoint> &pts, double x) {
    for (const FixedPoint &f : pts) {
        if (std::abs(f.x - x) <= 1e-9) {
            return &f;
        }
    }
    return nullptr;
}

Outcome fixed_points() {
    bool ok = true;
    std::vector<std::string> notes;
    auto expect = [&](FlowMap map, bool zero_stable, std::optional<double> zero_slope) {
        std::vector<FixedPoint> pts = classify_fixed_points(map);
        const FixedPoint *z = find_point(pts, 0.0);
        const FixedPoint *h = find_point(pts, 0.5);
        std::string name = std::string(flow_kind_name(map.kind));
        if (map.kind != FlowKind::ThermalP) {
            name += "(b=" + std::to_string(map.block) + ")";
        }
        bool good = pts.size() == 2 && z && h && z->stable == zero_stable && h->stable == !zero_stable;
        if (good && zero_slope) {
            good = std::abs(z->slope - *zero_slope) <= 1e-6;
        }
        ok = ok && good;
        std::string s = name + ": 0 " + (z ? (z->stable ? "stable" : "unstable") : "missing");
        if (zero_slope && z) {
            s += " slope " + num(z->slope, 10);
        }
        s += ", 1/2 " + std::string(h ? (h->stable ? "stable" : "unstable") : "missing");
        notes.push_back(s);
    };
    expect({FlowKind::GhzX, 3}, true, std::nullopt);
    expect({FlowKind::GhzX, 5}, true, std::nullopt);
    expect({FlowKind::GhzZ, 3}, false, 3.0);
    expect({FlowKind::GhzZ, 5}, false, 5.0);
    expect({FlowKind::ThermalP, 3}, false, std::nullopt);

    // The recursion p' = (1 - (1 - 2p)^b) / 2 gives |p' - 1/2| = 2^(b-1) |p - 1/2|^b
    // exactly; the bare form |p - 1/2|^b omits the 2^(b-1) factor.
    double worst = 0, bare = 0;
    for (int b : {3, 5}) {
        for (int i = 1; i < 100; i++) {
            double p = 0.5 * i / 100.0;
            double lhs = std::abs(ghz_z_step(p, b) - 0.5);
            worst = std::max(worst, std::abs(lhs - std::ldexp(std::pow(std::abs(p - 0.5), b), b - 1)));
            bare = std::max(bare, std::abs(lhs - std::pow(std::abs(p - 0.5), b)));
        }
    }
    ok = ok && worst <= 1e-12;
    notes.push_back("power law max |(|p'-1/2|) - 2^(b-1)|p-1/2|^b| = " + sci(worst) +
                    " <= 1e-12 (without the 2^(b-1) factor: " + sci(bare) + ")");
    return {ok, join(notes, "; ")};
}

Outcome majority_vote_identity() {
    double worst = 0;
    for (int b : {3, 5}) {
        for (double p : {0.1, 0.3, 0.49}) {
            DenseChannel lhs =
                compose(majority_vote_channel(b), compose(tensor_power(x_dephasing(p), b), repetition_encoding(b)));
            worst = std::max(worst, superoperator_distance(lhs, x_dephasing(ghz_x_step(p, b))));
        }
    }
    return {worst <= 1e-10, "max superoperator distance " + sci(worst) + " <= 1e-10 over b in {3,5}, p in {0.1,0.3,0.49}"};
}

Outcome recovery() {
    bool ok = true;
    std::vector<std::string> notes;
    for (double p : {0.1, 0.3}) {
        DenseState rho = build_state(StateKind::GhzZ, p, 6);
        RecoveryReport r = correlation_preserving_test(majority_vote_channel(3), rho, {0, 1, 2});
        DenseState back = apply_and_recover(majority_vote_channel(3), repetition_encoding(3), rho, {0, 1, 2});
        double f_enc = fidelity(rho.matrix(), back.matrix());
        ok = ok && r.fidelity >= 1 - 1e-9 && f_enc >= 1 - 1e-9 && std::abs(r.epsilon) <= 1e-9;
        notes.push_back("p=" + num(p) + ": 1-F_petz=" + sci(1 - r.fidelity) + " 1-F_encoding=" + sci(1 - f_enc) +
                        " eps=" + sci(r.epsilon));
    }
    return {ok, join(notes, "; ") + " (need 1-F <= 1e-9, |eps| <= 1e-9)"};
}

Outcome closed_form_fidelities() {
    double wx = 0, wz = 0;
    for (int L = 2; L <= 8; L++) {
        for (double p : {0.1, 0.25, 0.4}) {
            double fx = fidelity(ghz_pure(L).matrix(), build_state(StateKind::GhzX, p, L).matrix());
            wx = std::max(wx, std::abs(fx * fx - (std::pow(1 - p, L) + std::pow(p, L))));
            double fz =
                fidelity(build_state(StateKind::GhzZ, 0.5, L).matrix(), build_state(StateKind::GhzZ, p, L).matrix());
            wz = std::max(wz, std::abs(fz * fz - (0.5 + 0.5 * std::sqrt(1 - std::pow(1 - 2 * p, 2 * L)))));
        }
    }
    return {std::max(wx, wz) <= 1e-10, "max deviation bit-flip " + sci(wx) + ", phase-flip " + sci(wz) +
                                           " <= 1e-10 (squared root fidelity), L=2..8"};
}

Outcome thermal_reversal() {
    double worst = 0;
    std::vector<int> all{0, 1, 2, 3, 4, 5, 6, 7};
    for (double beta : {0.3, 1.0}) {
        ThermalChannels ch = thermal_tc_channels(beta);
        DenseState rho = build_state(StateKind::Thermal, beta, 2);
        DenseState back = apply_channel(ch.reverse, apply_channel(ch.coarse, rho, all), all);
        worst = std::max(worst, trace_distance(back.matrix(), rho.matrix()));
    }
    return {worst <= 1e-9, "max trace distance " + sci(worst) + " <= 1e-9 for beta in {0.3, 1.0}"};
}

Outcome coarse_parity_monte_carlo() {
    bool ok = true;
    std::vector<std::string> notes;
    const int L = 16, blocks_per_sample = (L / 2) * (L / 2);
    const int samples = (100000 + blocks_per_sample - 1) / blocks_per_sample;
    for (double p : {0.05, 0.1, 0.3}) {
        size_t odd = 0;
        for (int s = 0; s < samples; s++) {
            AnyonConfig c = sample_thermal_anyons(L, p, derive_seed(kSeed, {7, static_cast<uint64_t>(p * 1e6), static_cast<uint64_t>(s)}));
            odd += coarse_grain(c, BlockPartition::even()).count();
        }
        double n = static_cast<double>(samples) * blocks_per_sample;
        double rate = static_cast<double>(odd) / n;
        double expect = thermal_p_step(p);
        double se = std::sqrt(expect * (1 - expect) / n);
        double z = (rate - expect) / se;
        ok = ok && std::abs(z) <= 3;
        notes.push_back("p=" + num(p) + ": " + num(rate, 5) + " vs " + num(expect, 5) + " (z=" + num(z, 2) + ")");
    }
    return {ok, join(notes, "; ") + ", " + std::to_string(samples * blocks_per_sample) + " blocks each, |z| <= 3"};
}

Outcome rg_threshold() {
    std::vector<int> Ls{128};
    std::vector<double> grid;
    for (int i = 0; i <= 15; i++) {
        grid.push_back(0.030 + 0.002 * i);
    }
    ThresholdEstimate t = estimate_threshold(Ls, grid, 6, 2000, kSeed, 200);
    bool ok = t.p_c >= 0.036 && t.p_c <= 0.046;
    return {ok, "p_c = " + num(t.p_c) + " (95% CI [" + num(t.ci_lo) + ", " + num(t.ci_hi) +
                    "]) in [0.036, 0.046]; L=128, 6 levels, N=2000, p in [0.030, 0.060]"};
}

Outcome decay_exponent() {
    bool ok = true;
    std::vector<std::string> notes;
    for (double p : {0.01, 0.02, 0.03}) {
        std::vector<double> ps{p};
        GammaFit f = fit_gamma(ps, 512, 8, 1000, derive_seed(kSeed, {9, static_cast<uint64_t>(p * 1e6)}), 200);
        ok = ok && f.ci_lo > 1.0;
        notes.push_back("p=" + num(p) + ": gamma=" + num(f.gamma) + " [" + num(f.ci_lo) + ", " + num(f.ci_hi) +
                        "] (" + std::to_string(f.points) + " pts, free slope " + num(f.free_slope, 3) + ")");
    }

    // Synthetic densities: binomial anyon counts whose mean follows q' = q^2.
    std::mt19937_64 rng(kSeed);
    std::vector<DensityPair> pairs;
    for (double q = 0.005; q <= 0.05; q += 0.0025) {
        int L = 1 << 13;
        double sites = static_cast<double>(L / 2) * (L / 2);
        std::binomial_distribution<int64_t> draw(static_cast<int64_t>(sites), q * q);
        pairs.push_back({q, static_cast<double>(draw(rng)) / sites, L});
    }
    GammaFit syn = fit_gamma_pairs(pairs);
    bool syn_ok = std::abs(syn.gamma - 2.0) <= 0.02;
    ok = ok && syn_ok;
    notes.push_back("synthetic gamma=" + num(syn.gamma, 5) + " (target 2.00 +- 0.02)");
    return {ok, join(notes, "; ") + "; need CI lower bound > 1; L=512, 8 levels, N=1000"};
}

Outcome matching_optimality() {
    VerifyReport r = run_matching_oracle_suite(500, false);
    return {r.passed(), "mismatches=" + num(r.checks[0].measured) + ", invalid=" + num(r.checks[1].measured) +
                            " over 500 instances (<= 10 anyons, L <= 16)"};
}

Outcome mwpm_threshold() {
    std::vector<int> Ls{8, 16, 24};
    std::vector<double> ps{0.09, 0.095, 0.10, 0.105, 0.11, 0.115, 0.12};
    const int N = 5000;
    std::vector<std::vector<double>> rate(Ls.size());
    for (size_t li = 0; li < Ls.size(); li++) {
        for (size_t pi = 0; pi < ps.size(); pi++) {
            rate[li].push_back(decode_failure_rate(ps[pi], Ls[li], N, derive_seed(kSeed, {11, li, pi})).rate);
        }
    }
    bool ok = true;
    std::vector<std::string> notes;
    for (size_t i = 0; i < Ls.size(); i++) {
        for (size_t j = i + 1; j < Ls.size(); j++) {
            std::optional<double> x = curve_crossing(ps, rate[i], rate[j]);
            bool inside = x && *x >= 0.093 && *x <= 0.113;
            ok = ok && inside;
            notes.push_back("L=" + std::to_string(Ls[i]) + "/" + std::to_string(Ls[j]) + " cross at " +
                            (x ? num(*x) : std::string("none")));
        }
    }
    std::vector<std::string> rows;
    for (size_t li = 0; li < Ls.size(); li++) {
        std::vector<std::string> r;
        for (double v : rate[li]) {
            r.push_back(num(v, 3));
        }
        rows.push_back("L=" + std::to_string(Ls[li]) + " {" + join(r, " ") + "}");
    }
    return {ok, join(notes, ", ") + " in [0.093, 0.113]; N=5000; rates " + join(rows, " ")};
}

Outcome tmwpm_locality() {
    std::vector<int> as{4, 6, 8};
    std::vector<double> ps{0.05, 0.07, 0.08, 0.09, 0.10, 0.11, 0.12, 0.13};
    const int N = 400;
    std::vector<std::vector<double>> mu(as.size());
    for (size_t ai = 0; ai < as.size(); ai++) {
        TruncationGeometry g = TruncationGeometry::scaled(as[ai]);
        for (size_t pi = 0; pi < ps.size(); pi++) {
            mu[ai].push_back(agreement_probability(ps[pi], g.a, g.b, g.L, N, derive_seed(kSeed, {12, ai, pi})).mu);
        }
    }
    bool ok = true;
    double low = 1;
    for (const auto &m : mu) {
        low = std::min(low, m.front());
    }
    double high = mu.back().back();
    ok = low >= 0.95 && high <= 0.5;

    // The crossing uses the grid from 0.07 up, where mu < 1 and the curves
    // separate.
    std::vector<double> xs(ps.begin() + 1, ps.end());
    auto tail = [](const std::vector<double> &v) {
        return std::vector<double>(v.begin() + 1, v.end());
    };
    std::optional<double> estimate = curve_crossing(xs, tail(mu.back()), tail(mu.front()));
    ok = ok && estimate && *estimate >= 0.09 && *estimate <= 0.12;
    std::vector<std::string> notes;
    notes.push_back("min mu(a, 0.05) = " + num(low, 3) + " >= 0.95");
    notes.push_back("mu(8, 0.13) = " + num(high, 3) + " <= 0.5");
    notes.push_back("crossing a=4/8 at " + (estimate ? num(*estimate) : std::string("none")) + " in [0.09, 0.12]");
    std::optional<double> x46 = curve_crossing(xs, tail(mu[1]), tail(mu[0]));
    std::optional<double> x68 = curve_crossing(xs, tail(mu[2]), tail(mu[1]));
    notes.push_back("a=4/6 " + (x46 ? num(*x46) : std::string("none")) + ", a=6/8 " +
                    (x68 ? num(*x68) : std::string("none")));
    std::vector<std::string> rows;
    for (size_t ai = 0; ai < as.size(); ai++) {
        std::vector<std::string> r;
        for (double v : mu[ai]) {
            r.push_back(num(v, 3));
        }
        rows.push_back("a=" + std::to_string(as[ai]) + " {" + join(r, " ") + "}");
    }
    return {ok, join(notes, "; ") + "; L=8a, b=2a, N=400; mu " + join(rows, " ")};
}

Outcome determinism() {
    struct Case {
        ExperimentKind kind;
        std::vector<std::string> overrides;
    };
    std::vector<Case> cases = {
        {ExperimentKind::Flow, {"flow.kind=ghz-z"}},
        {ExperimentKind::Rg, {"rg.L=32,64", "rg.N=100", "rg.levels=4"}},
        {ExperimentKind::Decode, {"decode.N=200", "decode.L=8,12"}},
        {ExperimentKind::Tmwpm, {"tmwpm.N=40"}},
    };
    std::filesystem::path dir = std::filesystem::temp_directory_path() / "mixrg_acceptance_determinism";
    std::filesystem::remove_all(dir);
    bool ok = true;
    std::vector<std::string> notes;
    for (const Case &c : cases) {
        std::vector<std::string> csvs;
        for (int workers : {1, 1, 2, 4}) {
            Config cfg = default_config(c.kind);
            for (const std::string &o : c.overrides) {
                cfg.apply_override(o);
            }
            cfg.set("seed", "77");
            cfg.set("workers", std::to_string(workers));
            std::filesystem::path out = dir / std::to_string(csvs.size());
            write_outputs(run_sweep(c.kind, cfg), out.string());
            std::ifstream in(out / (std::string(experiment_name(c.kind)) + ".csv"), std::ios::binary);
            std::stringstream ss;
            ss << in.rdbuf();
            csvs.push_back(ss.str());
        }
        bool same = std::all_of(csvs.begin(), csvs.end(), [&](const std::string &s) { return s == csvs[0]; });
        ok = ok && same && !csvs[0].empty();
        notes.push_back(std::string(experiment_name(c.kind)) + (same ? " identical" : " DIFFERS"));
    }
    std::filesystem::remove_all(dir);
    return {ok, join(notes, ", ") + " (reruns and 1/2/4 workers, byte comparison)"};
}

std::vector<Criterion> criteria() {
    return {
        {"A1", "thermal flow-map consistency", 1.0, flow_consistency},
        {"A2", "fixed points and stability", 0, fixed_points},
        {"A3", "majority vote renormalizes dephasing", 30.0, majority_vote_identity},
        {"A4", "recovery of the phase-flip GHZ state", 0, recovery},
        {"A5", "closed-form fidelities", 0, closed_form_fidelities},
        {"A6", "thermal reversal", 120.0, thermal_reversal},
        {"A7", "coarse-parity Monte Carlo", 0, coarse_parity_monte_carlo},
        {"A8", "RG decoder threshold", 600.0, rg_threshold},
        {"A9", "anyon density decay exponent", 0, decay_exponent},
        {"A10", "matching optimality", 0, matching_optimality},
        {"A11", "global matching threshold", 1200.0, mwpm_threshold},
        {"A12", "truncated matching locality", 1800.0, tmwpm_locality},
        {"A13", "sweep determinism", 0, determinism},
    };
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Acceptance checks"};
    std::vector<std::string> only;
    bool list = false;
    app.add_option("ids", only, "Criteria to run (default: all)");
    app.add_flag("--list", list, "List criteria and exit");
    CLI11_PARSE(app, argc, argv);

    std::vector<Criterion> all = criteria();
    if (list) {
        for (const Criterion &c : all) {
            std::cout << c.id << "  " << c.title << "\n";
        }
        return 0;
    }
    for (const std::string &id : only) {
        if (std::none_of(all.begin(), all.end(), [&](const Criterion &c) { return c.id == id; })) {
            std::cerr << "unknown criterion " << id << "\n";
            return 1;
        }
    }

    int failures = 0;
    for (const Criterion &c : all) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) {
            continue;
        }
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("error: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::string timing = num(secs, 3) + " s";
        if (c.budget > 0) {
            bool in_time = secs < c.budget;
            o.passed = o.passed && in_time;
            timing += std::string(in_time ? " < " : " >= ") + num(c.budget) + " s budget";
        }
        std::cout << (o.passed ? "PASS " : "FAIL ") << c.id << " " << c.title << ": " << o.summary << " [" << timing
                  << "]" << std::endl;
        failures += !o.passed;
    }
    return failures == 0 ? 0 : 1;
}
