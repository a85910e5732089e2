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


#ifndef MIXRG_MATCHING_BLOSSOM_H
#define MIXRG_MATCHING_BLOSSOM_H

#include <cstdint>
#include <span>
#include <vector>

namespace mixrg {

struct WeightedEdge {
    int u = 0;
    int v = 0;
    int64_t weight = 0;
};

/// Maximum-weight matching with its optimal dual solution.
///
/// Duals are stored doubled so that integer weights keep every quantity
/// integral: `dual[i]` for vertices i < n and `dual[b]` for blossoms b >= n.
struct BlossomResult {
    int n = 0;
    /// Partner of each vertex, or -1.
    std::vector<int> mate;
    std::vector<int64_t> dual;
    /// Enclosing blossom of each vertex or blossom, -1 at top level.
    std::vector<int> parent;

    /// Doubled reduced cost of a (possibly absent) edge under the final
    /// duals. Non-negative for every edge is the optimality certificate of a
    /// perfect matching against the complete edge set.
    int64_t slack(int u, int v, int64_t weight) const;
};

/// Primal-dual blossom algorithm for general graphs. With
/// `max_cardinality` the result has maximum weight among the matchings of
/// maximum cardinality. O(n^3).
///
/// `greedy_start` (maximum-cardinality mode only) seeds the search with
/// per-vertex duals and a greedy matching of tight edges. The cardinality is
/// still maximum, but the weight is only guaranteed optimal when the result
/// is a perfect matching.
BlossomResult max_weight_matching(
    int n, std::span<const WeightedEdge> edges, bool max_cardinality, bool greedy_start = false);

}  // namespace mixrg

#endif
