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


#ifndef MIXRG_MATCHING_MWPM_H
#define MIXRG_MATCHING_MWPM_H

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "mixrg/lattice/torus.h"

namespace mixrg {

/// min(|dr|, L - |dr|) + min(|dc|, L - |dc|).
int torus_distance(Plaquette a, Plaquette b, int L);

/// Square window of side `side` on an L x L torus whose top-left plaquette is
/// `origin`. Distances inside the window do not wrap.
struct Region {
    Plaquette origin;
    int side = 0;

    /// Window-local coordinates of a torus plaquette (may lie outside
    /// [0, side) if the plaquette is not in the window).
    Plaquette local(Plaquette p, int L) const;
    bool contains(Plaquette p, int L) const;
    /// Number of edges a string crosses to leave the window from `p`.
    int boundary_distance(Plaquette p, int L) const;
};

/// Anyons to be paired, either on the whole torus (periodic L1 metric) or
/// inside a region with an absorbing outer boundary.
struct MatchingProblem {
    int L = 0;
    std::vector<Plaquette> nodes;
    bool has_region = false;
    Region region;

    static MatchingProblem torus(int L, std::vector<Plaquette> nodes);
    static MatchingProblem truncated(int L, Region region, std::vector<Plaquette> nodes);

    int distance(int i, int j) const;
    int boundary_distance(int i) const;
};

/// Partner index for nodes matched to the region boundary.
inline constexpr int kBoundary = -1;

struct Matching {
    /// partner[i] is the node matched to i, or kBoundary.
    std::vector<int> partner;
    /// Total string length.
    int64_t weight = 0;

    /// Pairs (i, j) with i < j, and (i, kBoundary), sorted.
    std::vector<std::pair<int, int>> pairs() const;
};

/// Raised for problems without a perfect matching (odd node count on the
/// torus).
class InfeasibleMatchingError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Deterministic tie-break key of a pairing, a function of the absolute torus
/// coordinates only, so that overlapping problems resolve equal-length
/// alternatives identically.
uint32_t pair_tiebreak(Plaquette a, Plaquette b, int L);
uint32_t boundary_tiebreak(Plaquette a, int L);

/// Exact minimum-weight perfect matching. Among minimum-length matchings the
/// one with the smallest sum of tie-break keys is returned.
Matching solve_mwpm(const MatchingProblem &problem);

/// Exhaustive search over all pairings, for small problems.
Matching brute_force_mwpm(const MatchingProblem &problem);

/// Checks perfect cover, symmetry, and weight additivity; throws
/// std::logic_error with a description on failure.
void validate_matching(const MatchingProblem &problem, const Matching &matching);

/// X strings annihilating every matched pair. Pairs are joined column moves
/// first (shorter wrap on the torus, ties toward +), then row moves; boundary
/// matches leave the region through its nearest side.
ErrorConfig apply_correction(const MatchingProblem &problem, const Matching &matching);

/// Logical failure statistics of the global decoder.
struct DecodeEstimate {
    double p = 0;
    int L = 0;
    int N = 0;
    int failures = 0;
    double rate = 0;
    double std_error = 0;
};

/// Samples N error configurations (sample s uses derive_seed(seed, {s})),
/// decodes each with the global matching and counts nontrivial homology.
DecodeEstimate decode_failure_rate(double p, int L, int N, uint64_t seed);

/// True if global matching of one sample leaves a logical error.
bool decode_sample_fails(double p, int L, uint64_t sample_seed);

}  // namespace mixrg

#endif
