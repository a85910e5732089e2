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


#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "mixrg/matching/blossom.h"
#include "mixrg/matching/mwpm.h"

using namespace mixrg;

namespace {


// Distinct random plaquettes on the torus or inside a random region.
MatchingProblem random_problem(std::mt19937_64 &rng, bool region, int max_nodes) {
    int L = 2 + 2 * static_cast<int>(rng() % 8);
    int n = static_cast<int>(rng() % static_cast<uint64_t>(max_nodes + 1));
    Region r{{static_cast<int>(rng() % L), static_cast<int>(rng() % L)}, 1 + static_cast<int>(rng() % L)};
    int capacity = region ? r.side * r.side : L * L;
    n = std::min(n, capacity);
    if (!region && n % 2) {
        n--;
    }
    std::vector<Plaquette> nodes;
    while (static_cast<int>(nodes.size()) < n) {
        Plaquette p;
        if (region) {
            p = {(r.origin.row + static_cast<int>(rng() % r.side)) % L,
                 (r.origin.col + static_cast<int>(rng() % r.side)) % L};
        } else {
            p = {static_cast<int>(rng() % L), static_cast<int>(rng() % L)};
        }
        if (std::find(nodes.begin(), nodes.end(), p) == nodes.end()) {
            nodes.push_back(p);
        }
    }
    return region ? MatchingProblem::truncated(L, r, nodes) : MatchingProblem::torus(L, nodes);
}

// Exhaustive maximum-weight matching for the blossom oracle.
int64_t brute_max_weight(int n, const std::vector<WeightedEdge> &edges, bool max_card, int *card) {
    int64_t best = -1;
    int best_card = -1;
    size_t m = edges.size();
    for (uint64_t mask = 0; mask < (uint64_t{1} << m); mask++) {
        std::vector<int> used(n, 0);
        bool ok = true;
        int64_t w = 0;
        int c = 0;
        for (size_t k = 0; k < m && ok; k++) {
            if ((mask >> k) & 1) {
                if (used[edges[k].u] || used[edges[k].v]) {
                    ok = false;
                }
                used[edges[k].u] = used[edges[k].v] = 1;
                w += edges[k].weight;
                c++;
            }
        }
        if (!ok) {
            continue;
        }
        if (max_card ? (c > best_card || (c == best_card && w > best)) : (w > best)) {
            best = w;
            best_card = c;
        }
    }
    *card = best_card;
    return best;
}

}  // namespace

TEST(torus_distance, examples) {
    EXPECT_EQ(torus_distance({2, 3}, {2, 3}, 8), 0);
    EXPECT_EQ(torus_distance({0, 0}, {0, 3}, 4), 1);
    EXPECT_EQ(torus_distance({1, 1}, {3, 2}, 8), 3);
    EXPECT_EQ(torus_distance({0, 0}, {4, 4}, 8), 8);
}

TEST(blossom, random_graphs_match_exhaustive_search) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 400; t++) {
        int n = 2 + static_cast<int>(rng() % 7);
        std::vector<WeightedEdge> edges;
        for (int u = 0; u < n; u++) {
            for (int v = u + 1; v < n; v++) {
                if (rng() % 3 != 0 && edges.size() < 14) {
                    edges.push_back({u, v, static_cast<int64_t>(rng() % 10)});
                }
            }
        }
        for (bool max_card : {false, true}) {
            BlossomResult r = max_weight_matching(n, edges, max_card);
            int64_t w = 0;
            int card = 0;
            for (const WeightedEdge &e : edges) {
                if (r.mate[e.u] == e.v) {
                    ASSERT_EQ(r.mate[e.v], e.u);
                    w += e.weight;
                    card++;
                }
            }
            int expected_card = 0;
            int64_t expected = brute_max_weight(n, edges, max_card, &expected_card);
            EXPECT_EQ(w, expected) << "trial " << t;
            if (max_card) {
                EXPECT_EQ(card, expected_card);
            }
            for (const WeightedEdge &e : edges) {
                EXPECT_GE(r.slack(e.u, e.v, e.weight), 0);
            }
        }
        BlossomResult greedy = max_weight_matching(n, edges, true, true);
        int card = 0;
        int64_t w = 0;
        for (const WeightedEdge &e : edges) {
            if (greedy.mate[e.u] == e.v) {
                w += e.weight;
                card++;
            }
        }
        int expected_card = 0;
        int64_t expected = brute_max_weight(n, edges, true, &expected_card);
        EXPECT_EQ(card, expected_card);
        if (2 * card == n) {
            EXPECT_EQ(w, expected) << "trial " << t;
        }
    }
}

TEST(blossom, greedy_start_requires_max_cardinality) {
    std::vector<WeightedEdge> edges = {{0, 1, 3}};
    EXPECT_THROW(max_weight_matching(2, edges, false, true), std::invalid_argument);
}

TEST(solve_mwpm, trivial_cases) {
    Matching empty = solve_mwpm(MatchingProblem::torus(8, {}));
    EXPECT_TRUE(empty.partner.empty());
    EXPECT_EQ(empty.weight, 0);

    Matching two = solve_mwpm(MatchingProblem::torus(8, {{0, 0}, {5, 6}}));
    EXPECT_EQ(two.partner, (std::vector<int>{1, 0}));
    EXPECT_EQ(two.weight, 3 + 2);
}

TEST(solve_mwpm, odd_torus_problem_is_infeasible) {
    EXPECT_THROW(solve_mwpm(MatchingProblem::torus(8, {{0, 0}})), InfeasibleMatchingError);
    EXPECT_THROW(brute_force_mwpm(MatchingProblem::torus(8, {{0, 0}, {1, 1}, {2, 2}})), InfeasibleMatchingError);
}

TEST(solve_mwpm, agrees_with_brute_force) {
    std::mt19937_64 rng(11);
    int mismatches = 0;
    for (int t = 0; t < 500; t++) {
        MatchingProblem problem = random_problem(rng, t % 2 == 1, 10);
        Matching fast = solve_mwpm(problem);
        Matching slow = brute_force_mwpm(problem);
        validate_matching(problem, fast);
        if (fast.weight != slow.weight || fast.partner != slow.partner) {
            mismatches++;
        }
    }
    EXPECT_EQ(mismatches, 0);
}

TEST(solve_mwpm, large_instances_are_certified) {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 10; t++) {
        int L = 32;
        ErrorConfig e = sample_errors(TorusLattice(L), 0.12, 500 + t);
        MatchingProblem problem = MatchingProblem::torus(L, syndrome(e).anyons());
        Matching m = solve_mwpm(problem);
        validate_matching(problem, m);
        EXPECT_EQ(syndrome(e ^ apply_correction(problem, m)).count(), 0u);

        // Dense reference: blossom on the complete graph.
        int n = static_cast<int>(problem.nodes.size());
        std::vector<WeightedEdge> all;
        for (int u = 0; u < n; u++) {
            for (int v = u + 1; v < n; v++) {
                all.push_back({u, v, 1000 - problem.distance(u, v)});
            }
        }
        BlossomResult dense = max_weight_matching(n, all, true);
        int64_t dense_weight = 0;
        for (int u = 0; u < n; u++) {
            ASSERT_GE(dense.mate[u], 0);
            if (u < dense.mate[u]) {
                dense_weight += problem.distance(u, dense.mate[u]);
            }
        }
        EXPECT_EQ(m.weight, dense_weight);
    }
}

TEST(solve_mwpm, translation_covariance) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 100; t++) {
        MatchingProblem problem = random_problem(rng, false, 12);
        int dx = static_cast<int>(rng() % problem.L), dy = static_cast<int>(rng() % problem.L);
        std::vector<Plaquette> moved;
        for (Plaquette p : problem.nodes) {
            moved.push_back({(p.row + dx) % problem.L, (p.col + dy) % problem.L});
        }
        EXPECT_EQ(solve_mwpm(problem).weight, solve_mwpm(MatchingProblem::torus(problem.L, moved)).weight);
    }
}

TEST(solve_mwpm, deterministic) {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 50; t++) {
        MatchingProblem problem = random_problem(rng, t % 2 == 0, 12);
        EXPECT_EQ(solve_mwpm(problem).partner, solve_mwpm(problem).partner);
    }
}

TEST(solve_mwpm, boundary_choices) {
    Region r{{0, 0}, 9};
    // One anyon: only the boundary is available.
    Matching one = solve_mwpm(MatchingProblem::truncated(16, r, {{4, 4}}));
    EXPECT_EQ(one.partner, (std::vector<int>{kBoundary}));
    EXPECT_EQ(one.weight, 5);
    // Two anyons at distance 2, boundary at distance >= 3: paired.
    Matching two = solve_mwpm(MatchingProblem::truncated(16, r, {{4, 3}, {4, 5}}));
    EXPECT_EQ(two.partner, (std::vector<int>{1, 0}));
    // Two anyons near opposite sides: both go to the boundary.
    Matching far = solve_mwpm(MatchingProblem::truncated(16, r, {{4, 0}, {4, 8}}));
    EXPECT_EQ(far.partner, (std::vector<int>{kBoundary, kBoundary}));
    EXPECT_EQ(far.weight, 2);
}

TEST(apply_correction, strings_remove_syndrome) {
    EXPECT_EQ(apply_correction(MatchingProblem::torus(8, {}), Matching{}).count(), 0u);

    MatchingProblem adjacent = MatchingProblem::torus(8, {{3, 3}, {3, 4}});
    ErrorConfig c = apply_correction(adjacent, solve_mwpm(adjacent));
    EXPECT_EQ(c.count(), 1u);
    EXPECT_TRUE(c.get(Edge{EdgeKind::West, 3, 4}));

    for (uint64_t s = 0; s < 100; s++) {
        int L = 4 + 2 * static_cast<int>(s % 8);
        ErrorConfig e = sample_errors(TorusLattice(L), 0.08, s);
        MatchingProblem problem = MatchingProblem::torus(L, syndrome(e).anyons());
        Matching m = solve_mwpm(problem);
        ErrorConfig corr = apply_correction(problem, m);
        EXPECT_EQ(static_cast<int64_t>(corr.count()) <= m.weight, true);
        EXPECT_EQ(syndrome(e ^ corr).count(), 0u);
    }
}

TEST(apply_correction, wraps_the_short_way) {
    MatchingProblem problem = MatchingProblem::torus(8, {{0, 0}, {0, 7}});
    ErrorConfig c = apply_correction(problem, solve_mwpm(problem));
    EXPECT_EQ(c.count(), 1u);
    EXPECT_TRUE(c.get(Edge{EdgeKind::West, 0, 0}));
}

TEST(apply_correction, boundary_strings_leave_the_region) {
    int L = 16;
    Region r{{14, 14}, 6};
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; t++) {
        std::vector<Plaquette> nodes;
        for (int k = 0; k < 5; k++) {
            Plaquette p{(r.origin.row + static_cast<int>(rng() % r.side)) % L,
                        (r.origin.col + static_cast<int>(rng() % r.side)) % L};
            if (std::find(nodes.begin(), nodes.end(), p) == nodes.end()) {
                nodes.push_back(p);
            }
        }
        MatchingProblem problem = MatchingProblem::truncated(L, r, nodes);
        Matching m = solve_mwpm(problem);
        ErrorConfig corr = apply_correction(problem, m);
        EXPECT_EQ(static_cast<int64_t>(corr.count()), m.weight);
        AnyonConfig s = syndrome(corr);
        // Inside the region the strings create exactly the matched anyons.
        for (int i = 0; i < r.side; i++) {
            for (int j = 0; j < r.side; j++) {
                Plaquette p{(r.origin.row + i) % L, (r.origin.col + j) % L};
                bool is_node = std::find(nodes.begin(), nodes.end(), p) != nodes.end();
                EXPECT_EQ(s.occupied(p), is_node);
            }
        }
    }
}

TEST(decode_failure_rate, zero_noise_never_fails) {
    DecodeEstimate e = decode_failure_rate(0.0, 8, 50, 1);
    EXPECT_EQ(e.failures, 0);
    EXPECT_EQ(e.rate, 0.0);
}

TEST(decode_failure_rate, monotone_in_noise) {
    DecodeEstimate low = decode_failure_rate(0.05, 16, 400, 2);
    DecodeEstimate high = decode_failure_rate(0.15, 16, 400, 3);
    EXPECT_LT(low.rate, high.rate);
    EXPECT_LT(low.rate, 0.05);
}

TEST(decode_failure_rate, deterministic) {
    EXPECT_EQ(decode_failure_rate(0.1, 8, 200, 9).failures, decode_failure_rate(0.1, 8, 200, 9).failures);
}
