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


#ifndef MIXRG_RG_RG_DECODER_H
#define MIXRG_RG_RG_DECODER_H

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixrg/lattice/torus.h"

namespace mixrg {

/// Which block partitions play the annihilation and coarse-graining roles.
struct RgConvention {
    BlockPartition annihilate = BlockPartition::odd();
    BlockPartition coarse = BlockPartition::even();

    /// The convention with the two offsets exchanged.
    static RgConvention swapped() {
        return RgConvention{BlockPartition::even(), BlockPartition::odd()};
    }
};

/// One renormalization step: pair annihilation on every annihilation block,
/// then parity coarse-graining onto the L/2 lattice. Throws
/// std::invalid_argument unless L >= 4 is a power of two.
AnyonConfig rg_step(const AnyonConfig &config, RgConvention convention = {});

/// Per-sample anyon densities at levels 0..levels; row-major, one row per
/// sample.
struct DensitySamples {
    int levels = 0;
    int N = 0;
    std::vector<double> values;

    double at(int sample, int level) const {
        return values[static_cast<size_t>(sample) * static_cast<size_t>(levels + 1) + static_cast<size_t>(level)];
    }
};

/// Mean anyon density per level with standard errors.
struct RgTrajectory {
    double p = 0;
    int L = 0;
    int N = 0;
    uint64_t seed = 0;
    std::vector<int> sizes;
    std::vector<double> q_mean;
    std::vector<double> q_stderr;
};

/// Samples N independent error configurations at strength p and records the
/// density after every RG level. Sample s uses the stream derive_seed(seed,
/// {s}). Requires 0 <= levels <= log2(L) - 1.
DensitySamples density_samples(double p, int L, int levels, int N, uint64_t seed, RgConvention convention = {});

RgTrajectory summarize(const DensitySamples &samples, double p, int L, uint64_t seed);

RgTrajectory density_flow(double p, int L, int levels, int N, uint64_t seed, RgConvention convention = {});

/// Raised when the threshold statistic never changes sign on the grid.
class NoCrossingError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Threshold estimate with a bootstrap confidence interval.
struct ThresholdEstimate {
    double p_c = 0;
    double ci_lo = 0;
    double ci_hi = 0;
    std::string method;
};

/// Estimates the RG-decoder threshold as the noise strength at which
/// coarse-graining neither cleans nor amplifies: the zero of
/// D(p) = mean(q^(levels) - q^(0)), averaged over the lattice sizes. The sign
/// change is located on the grid and refined by linear interpolation; the
/// 95% interval comes from resampling the Monte Carlo samples.
ThresholdEstimate estimate_threshold(
    std::span<const int> Ls,
    std::span<const double> p_grid,
    int levels,
    int N,
    uint64_t seed,
    int bootstrap = 200,
    RgConvention convention = {});

/// Threshold from precomputed samples, indexed [L][p].
ThresholdEstimate threshold_from_samples(
    std::span<const double> p_grid, const std::vector<std::vector<DensitySamples>> &samples, int bootstrap, uint64_t seed);

/// Exponent of q^(l+1) = (q^(l))^gamma with a 95% interval. `free_slope`
/// and `intercept` describe the unconstrained line log q' = a + s log q,
/// reported alongside for diagnostics.
struct GammaFit {
    double gamma = 0;
    double free_slope = 0;
    double intercept = 0;
    double ci_lo = 0;
    double ci_hi = 0;
    int points = 0;
};

/// Raised when too few (q^(l), q^(l+1)) pairs fall inside the fit window.
class InsufficientDataError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A consecutive pair of densities and the lattice side of the first.
struct DensityPair {
    double q = 0;
    double q_next = 0;
    int L = 0;
};

/// Least-squares fit of log q_next = gamma log q over the pairs inside the
/// window [min_anyons / L^2, q_cap] with q_next > 0. The interval uses the
/// t-distribution of the regression slope.
GammaFit fit_gamma_pairs(std::span<const DensityPair> pairs, double q_cap = 0.05, double min_anyons = 10.0);

/// Runs the density flow at every p and fits the pooled density pairs; the
/// interval is a bootstrap over the Monte Carlo samples.
GammaFit fit_gamma(
    std::span<const double> ps,
    int L,
    int levels,
    int N,
    uint64_t seed,
    int bootstrap = 200,
    double q_cap = 0.05,
    double min_anyons = 10.0);

}  // namespace mixrg

#endif
