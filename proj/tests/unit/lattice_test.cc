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

#include "mixrg/lattice/torus.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "mixrg/simd/dispatch.h"

using namespace mixrg;

namespace {

ErrorConfig random_errors(int L, double p, std::mt19937_64 &rng) {
    ErrorConfig e{TorusLattice(L)};
    std::bernoulli_distribution flip(p);
    for (int r = 0; r < L; r++) {
        for (int c = 0; c < L; c++) {
            e.set(Edge{EdgeKind::North, r, c}, flip(rng));
            e.set(Edge{EdgeKind::West, r, c}, flip(rng));
        }
    }
    return e;
}

// Direct transcription of the definition: count flipped boundary edges.
AnyonConfig naive_syndrome(const ErrorConfig &e) {
    int L = e.lattice().size();
    std::vector<Plaquette> hits;
    for (int r = 0; r < L; r++) {
        for (int c = 0; c < L; c++) {
            int n = e.get(Edge{EdgeKind::North, r, c}) + e.get(Edge{EdgeKind::North, (r + 1) % L, c}) +
                    e.get(Edge{EdgeKind::West, r, c}) + e.get(Edge{EdgeKind::West, r, (c + 1) % L});
            if (n % 2) {
                hits.push_back(Plaquette{r, c});
            }
        }
    }
    return AnyonConfig::from_plaquettes(L, hits);
}

AnyonConfig random_anyons(int L, double p, std::mt19937_64 &rng) {
    BitGrid g(static_cast<size_t>(L));
    std::bernoulli_distribution occ(p);
    for (int r = 0; r < L; r++) {
        for (int c = 0; c < L; c++) {
            g.set(r, c, occ(rng));
        }
    }
    if (g.count() % 2) {
        g.flip(0, 0);
    }
    return AnyonConfig::from_grid(g);
}

}  // namespace

TEST(torus, rejects_bad_sizes) {
    EXPECT_THROW(TorusLattice(0), std::invalid_argument);
    EXPECT_THROW(TorusLattice(3), std::invalid_argument);
    EXPECT_THROW(TorusLattice(-4), std::invalid_argument);
    TorusLattice t(6);
    EXPECT_EQ(t.num_edges(), 72u);
}

TEST(torus, every_edge_borders_two_plaquettes) {
    TorusLattice t(4);
    std::vector<int> degree(16, 0);
    for (int r = 0; r < 4; r++) {
        for (int c = 0; c < 4; c++) {
            for (EdgeKind k : {EdgeKind::North, EdgeKind::West}) {
                auto [a, b] = t.neighbors(Edge{k, r, c});
                EXPECT_NE(a, b);
                degree[a.row * 4 + a.col]++;
                degree[b.row * 4 + b.col]++;
            }
        }
    }
    for (int d : degree) {
        EXPECT_EQ(d, 4);
    }
}

TEST(sample_errors, extremes) {
    TorusLattice t(4);
    EXPECT_EQ(sample_errors(t, 0.0, 7).count(), 0u);
    EXPECT_EQ(sample_errors(t, 1.0, 7).count(), 32u);
    EXPECT_THROW(sample_errors(t, -0.1, 7), std::invalid_argument);
    EXPECT_THROW(sample_errors(t, 1.5, 7), std::invalid_argument);
}

TEST(sample_errors, deterministic_and_seed_sensitive) {
    TorusLattice t(70);
    EXPECT_EQ(sample_errors(t, 0.2, 5), sample_errors(t, 0.2, 5));
    EXPECT_FALSE(sample_errors(t, 0.2, 5) == sample_errors(t, 0.2, 6));
}

TEST(sample_errors, flip_fraction_matches_binomial) {
    TorusLattice t(64);
    const double p = 0.05;
    const int n = 2000;
    double total = 0;
    for (int s = 0; s < n; s++) {
        total += static_cast<double>(sample_errors(t, p, 1000 + s).count());
    }
    double trials = static_cast<double>(n) * static_cast<double>(t.num_edges());
    double mean = total / trials;
    double se = std::sqrt(p * (1 - p) / trials);
    EXPECT_LT(std::abs(mean - p), 3 * se);
}

TEST(sample_errors, same_bits_on_every_isa) {
    TorusLattice t(130);
    ErrorConfig ref = [&] {
        simd::ScopedIsa s(simd::Isa::Scalar);
        return sample_errors(t, 0.3, 99);
    }();
    for (simd::Isa isa : {simd::Isa::Packed, simd::Isa::Avx2}) {
        if (!simd::isa_available(isa)) {
            continue;
        }
        simd::ScopedIsa s(isa);
        EXPECT_EQ(sample_errors(t, 0.3, 99), ref) << simd::isa_name(isa);
    }
}

TEST(syndrome, single_edge) {
    TorusLattice t(4);
    ErrorConfig e(t);
    e.flip(Edge{EdgeKind::North, 0, 2});
    AnyonConfig s = syndrome(e);
    EXPECT_EQ(s.count(), 2u);
    EXPECT_TRUE(s.occupied(3, 2));
    EXPECT_TRUE(s.occupied(0, 2));

    ErrorConfig w(t);
    w.flip(Edge{EdgeKind::West, 1, 0});
    AnyonConfig sw = syndrome(w);
    EXPECT_TRUE(sw.occupied(1, 3));
    EXPECT_TRUE(sw.occupied(1, 0));
}

TEST(syndrome, two_edges_share_plaquette) {
    TorusLattice t(6);
    ErrorConfig e(t);
    e.flip(Edge{EdgeKind::West, 2, 2});
    e.flip(Edge{EdgeKind::West, 2, 3});
    AnyonConfig s = syndrome(e);
    EXPECT_EQ(s.count(), 2u);
    EXPECT_FALSE(s.occupied(2, 2));
    EXPECT_TRUE(s.occupied(2, 1));
    EXPECT_TRUE(s.occupied(2, 3));
}

TEST(syndrome, matches_definition_on_every_isa) {
    std::mt19937_64 rng(3);
    for (int L : {2, 4, 6, 62, 64, 66, 128, 130, 200}) {
        ErrorConfig e = random_errors(L, 0.2, rng);
        AnyonConfig expect = naive_syndrome(e);
        for (simd::Isa isa : {simd::Isa::Scalar, simd::Isa::Packed, simd::Isa::Avx2}) {
            if (!simd::isa_available(isa)) {
                continue;
            }
            simd::ScopedIsa s(isa);
            EXPECT_EQ(syndrome(e), expect) << "L=" << L << " " << simd::isa_name(isa);
        }
    }
}

TEST(syndrome, linear_and_even) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 50; trial++) {
        ErrorConfig a = random_errors(10, 0.3, rng);
        ErrorConfig b = random_errors(10, 0.3, rng);
        BitGrid lhs = syndrome(a ^ b).grid();
        BitGrid rhs = syndrome(a).grid();
        rhs ^= syndrome(b).grid();
        EXPECT_EQ(lhs, rhs);
        EXPECT_EQ(syndrome(a).count() % 2, 0u);
    }
}

TEST(anyon_config, rejects_odd_parity) {
    BitGrid g(4);
    g.set(1, 1, true);
    EXPECT_THROW(AnyonConfig::from_grid(g), std::invalid_argument);
    std::vector<Plaquette> two{{0, 0}, {5, 1}};
    AnyonConfig a = AnyonConfig::from_plaquettes(4, two);
    EXPECT_TRUE(a.occupied(1, 1));
    EXPECT_EQ(a.anyons().size(), 2u);
}

TEST(blocks, pair_annihilation_rules) {
    std::vector<Plaquette> two{{0, 0}, {1, 1}};
    AnyonConfig a = AnyonConfig::from_plaquettes(4, two);
    EXPECT_EQ(pair_annihilation_block(a, Block{0, 0}).count(), 0u);

    std::vector<Plaquette> four{{1, 1}, {1, 2}, {2, 1}, {2, 2}};
    AnyonConfig b = AnyonConfig::from_plaquettes(4, four);
    EXPECT_EQ(pair_annihilation_block(b, Block{1, 1}).count(), 0u);

    // One anyon in the block, one outside: nothing changes anywhere.
    std::vector<Plaquette> split{{0, 0}, {2, 2}};
    AnyonConfig c = AnyonConfig::from_plaquettes(4, split);
    EXPECT_EQ(pair_annihilation_block(c, Block{0, 0}), c);

    // Wrapping block (3,3) covers the four corners.
    std::vector<Plaquette> corners{{3, 3}, {0, 0}, {2, 2}, {1, 2}};
    AnyonConfig d = pair_annihilation_block(AnyonConfig::from_plaquettes(4, corners), Block{3, 3});
    EXPECT_EQ(d.count(), 2u);
    EXPECT_TRUE(d.occupied(2, 2));
}

TEST(blocks, coarse_parity) {
    std::vector<Plaquette> three{{0, 0}, {0, 1}, {1, 0}, {3, 3}};
    AnyonConfig a = AnyonConfig::from_plaquettes(4, three);
    EXPECT_TRUE(parity_coarse_block(a, Block{0, 0}));
    EXPECT_FALSE(parity_coarse_block(a, Block{2, 0}));
    EXPECT_TRUE(parity_coarse_block(a, Block{2, 2}));
}

TEST(blocks, translation_by_two_commutes) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; trial++) {
        AnyonConfig a = random_anyons(8, 0.4, rng);
        std::vector<Plaquette> shifted;
        for (Plaquette p : a.anyons()) {
            shifted.push_back(Plaquette{p.row + 2, p.col - 2});
        }
        AnyonConfig b = AnyonConfig::from_plaquettes(8, shifted);
        for (int r = 0; r < 8; r++) {
            for (int c = 0; c < 8; c++) {
                EXPECT_EQ(parity_coarse_block(a, Block{r, c}), parity_coarse_block(b, Block{r + 2, c - 2}));
                AnyonConfig ga = pair_annihilation_block(a, Block{r, c});
                AnyonConfig gb = pair_annihilation_block(b, Block{r + 2, c - 2});
                for (int i = 0; i < 8; i++) {
                    for (int j = 0; j < 8; j++) {
                        EXPECT_EQ(ga.occupied(i, j), gb.occupied(i + 2, j - 2));
                    }
                }
            }
        }
    }
}

TEST(blocks, packed_kernels_match_reference) {
    std::mt19937_64 rng(11);
    for (int L : {4, 8, 60, 64, 68, 128, 256}) {
        for (double p : {0.05, 0.3, 0.7}) {
            AnyonConfig a = random_anyons(L, p, rng);
            for (BlockPartition part : {BlockPartition::even(), BlockPartition::odd()}) {
                AnyonConfig x = a, y = a;
                reference::annihilate_blocks(x, part);
                packed::annihilate_blocks(y, part);
                EXPECT_EQ(x, y) << "L=" << L;
                EXPECT_EQ(reference::coarse_grain(a, part), packed::coarse_grain(a, part)) << "L=" << L;
            }
        }
    }
}

TEST(blocks, coarse_grain_needs_four) {
    AnyonConfig a(2);
    EXPECT_THROW(coarse_grain(a, BlockPartition::even()), std::invalid_argument);
}

TEST(thermal_sampler, even_parity_and_deterministic) {
    for (uint64_t s = 0; s < 50; s++) {
        AnyonConfig a = sample_thermal_anyons(6, 0.3, s);
        EXPECT_EQ(a.count() % 2, 0u);
        EXPECT_EQ(a, sample_thermal_anyons(6, 0.3, s));
    }
    EXPECT_EQ(sample_thermal_anyons(4, 0.0, 1).count(), 0u);
}

TEST(logical, null_chain_and_loops) {
    TorusLattice t(4);
    ErrorConfig e = sample_errors(t, 0.2, 17);
    EXPECT_TRUE(logical_coordinates(e, e).trivial());

    // A column of north edges is a closed dual loop winding vertically.
    ErrorConfig row_loop(t);
    for (int r = 0; r < 4; r++) {
        row_loop.flip(Edge{EdgeKind::North, r, 1});
    }
    ErrorConfig none(t);
    EXPECT_EQ(logical_coordinates(row_loop, none), (LogicalCoordinates{true, false}));

    ErrorConfig col_loop(t);
    for (int c = 0; c < 4; c++) {
        col_loop.flip(Edge{EdgeKind::West, 2, c});
    }
    EXPECT_EQ(logical_coordinates(col_loop, none), (LogicalCoordinates{false, true}));
    EXPECT_TRUE(logical_coordinates(col_loop, col_loop).trivial());
    EXPECT_EQ(logical_coordinates(row_loop ^ col_loop, none), (LogicalCoordinates{true, true}));
}

TEST(logical, rejects_open_chain) {
    TorusLattice t(4);
    ErrorConfig e(t), none(t);
    e.flip(Edge{EdgeKind::North, 1, 1});
    EXPECT_THROW(logical_coordinates(e, none), std::invalid_argument);
}

TEST(logical, invariant_under_vertex_stars) {
    TorusLattice t(6);
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 40; trial++) {
        ErrorConfig e = random_errors(6, 0.3, rng);
        ErrorConfig base = e;
        LogicalCoordinates before = logical_coordinates(e, base);
        ErrorConfig moved = base;
        int r = static_cast<int>(rng() % 6), c = static_cast<int>(rng() % 6);
        for (Edge edge : vertex_star(t, r, c)) {
            moved.flip(edge);
        }
        EXPECT_EQ(syndrome(moved), syndrome(base));
        EXPECT_EQ(logical_coordinates(e, moved), before);
    }
}

// At L = 2 there are 2^8 edge sets. Closed chains form a space of dimension
// 8 - 3 = 5 (four plaquette constraints, one redundant); modulo the span of
// the vertex stars (dimension 3) the quotient is Z2^2. Every closed chain is
// classified by brute force against the four coset representatives.
TEST(logical, exhaustive_homology_at_two) {
    TorusLattice t(2);
    auto from_mask = [&](uint32_t m) {
        ErrorConfig e(t);
        for (int k = 0; k < 8; k++) {
            if ((m >> k) & 1) {
                int plane = k / 4, idx = k % 4;
                e.flip(Edge{plane ? EdgeKind::West : EdgeKind::North, idx / 2, idx % 2});
            }
        }
        return e;
    };
    std::vector<ErrorConfig> span{ErrorConfig(t)};
    for (int r = 0; r < 2; r++) {
        for (int c = 0; c < 2; c++) {
            ErrorConfig s(t);
            for (Edge edge : vertex_star(t, r, c)) {
                s.flip(edge);
            }
            size_t n = span.size();
            for (size_t i = 0; i < n; i++) {
                ErrorConfig x = span[i] ^ s;
                if (std::find(span.begin(), span.end(), x) == span.end()) {
                    span.push_back(x);
                }
            }
        }
    }
    ASSERT_EQ(span.size(), 8u);
    ErrorConfig lr(t), lc(t);
    lr.flip(Edge{EdgeKind::North, 0, 0});
    lr.flip(Edge{EdgeKind::North, 1, 0});
    lc.flip(Edge{EdgeKind::West, 0, 0});
    lc.flip(Edge{EdgeKind::West, 0, 1});
    ErrorConfig reps[4] = {ErrorConfig(t), lr, lc, lr ^ lc};
    LogicalCoordinates classes[4] = {{false, false}, {true, false}, {false, true}, {true, true}};
    ErrorConfig none(t);
    int closed = 0;
    for (uint32_t m = 0; m < 256; m++) {
        ErrorConfig e = from_mask(m);
        if (syndrome(e).count() != 0) {
            EXPECT_THROW(logical_coordinates(e, none), std::invalid_argument);
            continue;
        }
        closed++;
        int found = -1;
        for (int k = 0; k < 4; k++) {
            for (const ErrorConfig &s : span) {
                if ((reps[k] ^ s) == e) {
                    found = k;
                }
            }
        }
        ASSERT_GE(found, 0);
        EXPECT_EQ(logical_coordinates(e, none), classes[found]);
    }
    EXPECT_EQ(closed, 32);
}
