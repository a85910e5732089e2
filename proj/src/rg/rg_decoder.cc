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


#include "mixrg/rg/rg_decoder.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "mixrg/common/rng.h"
#include "mixrg/common/stats.h"

namespace mixrg {

namespace {

int log2_int(int n) {
    int k = 0;
    while ((1 << k) < n) {
        k++;
    }
    return k;
}

void check_rg_size(int L) {
    if (L < 4 || !is_power_of_two(L)) {
        throw std::invalid_argument("RG step needs a power-of-two lattice with L >= 4, got L=" + std::to_string(L));
    }
}

void check_levels(int L, int levels) {
    check_rg_size(L);
    if (levels < 0 || levels > log2_int(L) - 1) {
        throw std::invalid_argument(
            "levels must lie in [0, log2(L) - 1] = [0, " + std::to_string(log2_int(L) - 1) + "], got " +
            std::to_string(levels));
    }
}

double student_t975(int df) {
    static const double table[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
                                   2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
                                   2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
    if (df < 1) {
        return INFINITY;
    }
    if (df <= 30) {
        return table[df - 1];
    }
    return 1.96 + 2.4 / df;
}

// Sample weights of a bootstrap replicate: counts[s] = multiplicity of s.
std::vector<int> resample_counts(int N, std::mt19937_64 &rng) {
    std::vector<int> counts(static_cast<size_t>(N), 0);
    std::uniform_int_distribution<int> pick(0, N - 1);
    for (int i = 0; i < N; i++) {
        counts[static_cast<size_t>(pick(rng))]++;
    }
    return counts;
}

double weighted_mean_level(const DensitySamples &s, int level, const std::vector<int> *counts) {
    double total = 0;
    for (int i = 0; i < s.N; i++) {
        double w = counts ? (*counts)[static_cast<size_t>(i)] : 1.0;
        total += w * s.at(i, level);
    }
    return total / s.N;
}

}  // namespace

AnyonConfig rg_step(const AnyonConfig &config, RgConvention convention) {
    check_rg_size(config.size());
    if (convention.annihilate.offset == convention.coarse.offset) {
        throw std::invalid_argument("annihilation and coarse-graining partitions must differ");
    }
    AnyonConfig work = config;
    annihilate_blocks(work, convention.annihilate);
    return coarse_grain(work, convention.coarse);
}

DensitySamples density_samples(double p, int L, int levels, int N, uint64_t seed, RgConvention convention) {
    check_levels(L, levels);
    if (N < 1) {
        throw std::invalid_argument("sample count must be positive");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("p must lie in [0, 1]");
    }
    DensitySamples out;
    out.levels = levels;
    out.N = N;
    out.values.reserve(static_cast<size_t>(N) * static_cast<size_t>(levels + 1));
    TorusLattice lattice(L);
    for (int s = 0; s < N; s++) {
        AnyonConfig config = syndrome(sample_errors(lattice, p, derive_seed(seed, {static_cast<uint64_t>(s)})));
        out.values.push_back(config.density());
        for (int l = 1; l <= levels; l++) {
            config = rg_step(config, convention);
            out.values.push_back(config.density());
        }
    }
    return out;
}

RgTrajectory summarize(const DensitySamples &samples, double p, int L, uint64_t seed) {
    RgTrajectory t;
    t.p = p;
    t.L = L;
    t.N = samples.N;
    t.seed = seed;
    for (int l = 0; l <= samples.levels; l++) {
        double sum = 0, sum2 = 0;
        for (int s = 0; s < samples.N; s++) {
            double q = samples.at(s, l);
            sum += q;
            sum2 += q * q;
        }
        double mean = sum / samples.N;
        double var = samples.N > 1 ? std::max(0.0, (sum2 - samples.N * mean * mean) / (samples.N - 1)) : 0.0;
        t.sizes.push_back(L >> l);
        t.q_mean.push_back(mean);
        t.q_stderr.push_back(std::sqrt(var / samples.N));
    }
    return t;
}

RgTrajectory density_flow(double p, int L, int levels, int N, uint64_t seed, RgConvention convention) {
    return summarize(density_samples(p, L, levels, N, seed, convention), p, L, seed);
}

ThresholdEstimate threshold_from_samples(
    std::span<const double> p_grid, const std::vector<std::vector<DensitySamples>> &samples, int bootstrap, uint64_t seed) {
    if (p_grid.size() < 2) {
        throw std::invalid_argument("threshold estimation needs at least two grid points");
    }
    if (!std::is_sorted(p_grid.begin(), p_grid.end())) {
        throw std::invalid_argument("p grid must be sorted");
    }
    auto statistic = [&](std::mt19937_64 *rng) {
        std::vector<double> d(p_grid.size(), 0.0);
        for (const auto &per_p : samples) {
            for (size_t i = 0; i < p_grid.size(); i++) {
                const DensitySamples &s = per_p[i];
                std::vector<int> counts;
                if (rng) {
                    counts = resample_counts(s.N, *rng);
                }
                const std::vector<int> *c = rng ? &counts : nullptr;
                d[i] += (weighted_mean_level(s, s.levels, c) - weighted_mean_level(s, 0, c)) / samples.size();
            }
        }
        return d;
    };
    std::optional<double> center = first_upward_crossing(p_grid, statistic(nullptr));
    if (!center) {
        throw NoCrossingError("terminal density never crosses the initial density on the p grid");
    }
    ThresholdEstimate est;
    est.p_c = *center;
    est.method = "zero of mean(q_last - q_0), linear interpolation, bootstrap 95% CI";
    std::vector<double> reps;
    std::mt19937_64 rng(derive_seed(seed, {0xB0075u}));
    for (int b = 0; b < bootstrap; b++) {
        if (auto c = first_upward_crossing(p_grid, statistic(&rng))) {
            reps.push_back(*c);
        }
    }
    if (reps.empty()) {
        est.ci_lo = est.ci_hi = est.p_c;
    } else {
        est.ci_lo = std::min(est.p_c, quantile(reps, 0.025));
        est.ci_hi = std::max(est.p_c, quantile(reps, 0.975));
    }
    return est;
}

ThresholdEstimate estimate_threshold(
    std::span<const int> Ls,
    std::span<const double> p_grid,
    int levels,
    int N,
    uint64_t seed,
    int bootstrap,
    RgConvention convention) {
    if (Ls.empty()) {
        throw std::invalid_argument("threshold estimation needs at least one lattice size");
    }
    std::vector<std::vector<DensitySamples>> samples;
    for (size_t li = 0; li < Ls.size(); li++) {
        check_levels(Ls[li], levels);
        std::vector<DensitySamples> per_p;
        for (size_t pi = 0; pi < p_grid.size(); pi++) {
            per_p.push_back(density_samples(p_grid[pi], Ls[li], levels, N, derive_seed(seed, {li, pi}), convention));
        }
        samples.push_back(std::move(per_p));
    }
    return threshold_from_samples(p_grid, samples, bootstrap, seed);
}

GammaFit fit_gamma_pairs(std::span<const DensityPair> pairs, double q_cap, double min_anyons) {
    std::vector<double> xs, ys;
    for (const DensityPair &d : pairs) {
        double floor = min_anyons / (static_cast<double>(d.L) * d.L);
        if (d.q >= floor && d.q <= q_cap && d.q_next > 0.0) {
            xs.push_back(std::log(d.q));
            ys.push_back(std::log(d.q_next));
        }
    }
    int n = static_cast<int>(xs.size());
    if (n < 1) {
        throw InsufficientDataError("no density pairs inside the fit window");
    }
    double sxx0 = 0, sxy0 = 0, mx = 0, my = 0;
    for (int i = 0; i < n; i++) {
        sxx0 += xs[i] * xs[i];
        sxy0 += xs[i] * ys[i];
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    GammaFit fit;
    fit.gamma = sxy0 / sxx0;
    fit.points = n;
    fit.ci_lo = -INFINITY;
    fit.ci_hi = INFINITY;
    if (n > 1) {
        double sse = 0;
        for (int i = 0; i < n; i++) {
            double r = ys[i] - fit.gamma * xs[i];
            sse += r * r;
        }
        double se = std::sqrt(sse / (n - 1) / sxx0);
        double t = student_t975(n - 1);
        fit.ci_lo = fit.gamma - t * se;
        fit.ci_hi = fit.gamma + t * se;
        double sxx = 0, sxy = 0;
        for (int i = 0; i < n; i++) {
            sxx += (xs[i] - mx) * (xs[i] - mx);
            sxy += (xs[i] - mx) * (ys[i] - my);
        }
        if (sxx > 0.0) {
            fit.free_slope = sxy / sxx;
            fit.intercept = my - fit.free_slope * mx;
        }
    }
    return fit;
}

GammaFit fit_gamma(
    std::span<const double> ps,
    int L,
    int levels,
    int N,
    uint64_t seed,
    int bootstrap,
    double q_cap,
    double min_anyons) {
    check_levels(L, levels);
    for (double p : ps) {
        if (p <= 0.0) {
            throw std::invalid_argument("fit_gamma needs p > 0: p = 0 produces no anyons");
        }
    }
    std::vector<DensitySamples> samples;
    for (size_t i = 0; i < ps.size(); i++) {
        samples.push_back(density_samples(ps[i], L, levels, N, derive_seed(seed, {i})));
    }
    auto pairs_of = [&](std::mt19937_64 *rng) {
        std::vector<DensityPair> pairs;
        for (const DensitySamples &s : samples) {
            std::vector<int> counts;
            if (rng) {
                counts = resample_counts(s.N, *rng);
            }
            const std::vector<int> *c = rng ? &counts : nullptr;
            for (int l = 0; l < s.levels; l++) {
                pairs.push_back(DensityPair{weighted_mean_level(s, l, c), weighted_mean_level(s, l + 1, c), L >> l});
            }
        }
        return pairs;
    };
    std::vector<DensityPair> pairs = pairs_of(nullptr);
    GammaFit fit = fit_gamma_pairs(pairs, q_cap, min_anyons);
    std::vector<double> reps;
    std::mt19937_64 rng(derive_seed(seed, {0x6A33Au}));
    for (int b = 0; b < bootstrap; b++) {
        try {
            reps.push_back(fit_gamma_pairs(pairs_of(&rng), q_cap, min_anyons).gamma);
        } catch (const InsufficientDataError &) {
        }
    }
    if (reps.size() >= 10) {
        fit.ci_lo = quantile(reps, 0.025);
        fit.ci_hi = quantile(reps, 0.975);
    }
    return fit;
}

}  // namespace mixrg
