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

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mixrg/common/rng.h"
#include "mixrg/simd/dispatch.h"
#include "mixrg/simd/kernels.h"

namespace mixrg {

namespace {

int wrap_index(int x, int L) {
    int m = x % L;
    return m < 0 ? m + L : m;
}

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("probability must lie in [0, 1], got " + std::to_string(p));
    }
}

/// Fills every row of `grid` with Bernoulli(p) bits from the counter stream
/// (mix64(seed), base + r * side + c).
void fill_bernoulli(BitGrid &grid, double p, uint64_t seed, uint32_t base) {
    uint64_t key = mix64(seed);
    size_t side = grid.side();
    if (p >= 1.0) {
        for (size_t r = 0; r < side; r++) {
            for (size_t c = 0; c < side; c++) {
                grid.set(r, c, true);
            }
        }
        return;
    }
    uint32_t threshold = probability_threshold(p);
    for (size_t r = 0; r < side; r++) {
        simd::bernoulli_bits(grid.row(r), side, key, base + static_cast<uint32_t>(r * side), threshold);
    }
}

// Grid translations used to reduce the odd partition to the even one.
BitGrid shift_up_left(const BitGrid &g) {
    size_t L = g.side();
    BitGrid out(L);
    for (size_t r = 0; r < L; r++) {
        for (size_t c = 0; c < L; c++) {
            if (g.get((r + 1) % L, (c + 1) % L)) {
                out.set(r, c, true);
            }
        }
    }
    return out;
}

BitGrid shift_down_right(const BitGrid &g) {
    size_t L = g.side();
    BitGrid out(L);
    for (size_t r = 0; r < L; r++) {
        for (size_t c = 0; c < L; c++) {
            if (g.get(r, c)) {
                out.set((r + 1) % L, (c + 1) % L, true);
            }
        }
    }
    return out;
}

/// Gathers the even-position bits of x into the low 32 bits.
inline uint64_t compress_even_bits(uint64_t x) {
    x &= 0x5555555555555555ULL;
    x = (x | (x >> 1)) & 0x3333333333333333ULL;
    x = (x | (x >> 2)) & 0x0F0F0F0F0F0F0F0FULL;
    x = (x | (x >> 4)) & 0x00FF00FF00FF00FFULL;
    x = (x | (x >> 8)) & 0x0000FFFF0000FFFFULL;
    x = (x | (x >> 16)) & 0x00000000FFFFFFFFULL;
    return x;
}

/// Pair-annihilation on the offset-0 blocks, operating on whole words.
void annihilate_even_packed(BitGrid &g) {
    size_t L = g.side();
    size_t wpr = g.words_per_row();
    for (size_t r = 0; r < L; r += 2) {
        auto a = g.row(r);
        auto b = g.row(r + 1);
        for (size_t w = 0; w < wpr; w++) {
            uint64_t x = a[w] ^ b[w];
            uint64_t odd_pairs = (x ^ (x >> 1)) & 0x5555555555555555ULL;
            // Pairs never straddle words because 64 is even.
            uint64_t even_pairs = ~odd_pairs & 0x5555555555555555ULL;
            uint64_t clear = even_pairs | (even_pairs << 1);
            a[w] &= ~clear;
            b[w] &= ~clear;
        }
    }
}

AnyonConfig coarse_even_packed(const BitGrid &g) {
    size_t L = g.side();
    size_t wpr = g.words_per_row();
    BitGrid out(L / 2);
    size_t owpr = out.words_per_row();
    for (size_t r = 0; r < L; r += 2) {
        auto a = g.row(r);
        auto b = g.row(r + 1);
        auto o = out.row(r / 2);
        for (size_t w = 0; w < wpr; w++) {
            uint64_t x = a[w] ^ b[w];
            uint64_t parity = compress_even_bits(x ^ (x >> 1));
            size_t shift = (w % 2) * 32;
            if (w / 2 < owpr) {
                o[w / 2] |= parity << shift;
            }
        }
    }
    return AnyonConfig::from_grid(std::move(out));
}

}  // namespace

BitGrid::BitGrid(size_t side) : side_(side), wpr_((side + 63) / 64), words_(side * ((side + 63) / 64), 0) {
}

size_t BitGrid::count() const {
    return simd::popcount(words_);
}

bool BitGrid::any() const {
    for (uint64_t w : words_) {
        if (w != 0) {
            return true;
        }
    }
    return false;
}

void BitGrid::clear() {
    std::fill(words_.begin(), words_.end(), 0);
}

BitGrid &BitGrid::operator^=(const BitGrid &other) {
    if (other.side_ != side_) {
        throw std::invalid_argument("BitGrid size mismatch");
    }
    for (size_t i = 0; i < words_.size(); i++) {
        words_[i] ^= other.words_[i];
    }
    return *this;
}

TorusLattice::TorusLattice(int L) : L_(L) {
    if (L <= 0 || L % 2 != 0) {
        throw std::invalid_argument("torus size must be a positive even integer, got " + std::to_string(L));
    }
}

Plaquette TorusLattice::wrap(int row, int col) const {
    return Plaquette{wrap_index(row, L_), wrap_index(col, L_)};
}

std::pair<Plaquette, Plaquette> TorusLattice::neighbors(Edge e) const {
    if (e.kind == EdgeKind::North) {
        return {wrap(e.row - 1, e.col), wrap(e.row, e.col)};
    }
    return {wrap(e.row, e.col - 1), wrap(e.row, e.col)};
}

bool is_power_of_two(int n) {
    return n > 0 && std::has_single_bit(static_cast<unsigned>(n));
}

ErrorConfig::ErrorConfig(TorusLattice lattice)
    : lattice_(lattice), north_(static_cast<size_t>(lattice.size())), west_(static_cast<size_t>(lattice.size())) {
}

bool ErrorConfig::get(Edge e) const {
    const BitGrid &g = e.kind == EdgeKind::North ? north_ : west_;
    return g.get(static_cast<size_t>(e.row), static_cast<size_t>(e.col));
}

void ErrorConfig::flip(Edge e) {
    BitGrid &g = e.kind == EdgeKind::North ? north_ : west_;
    g.flip(static_cast<size_t>(e.row), static_cast<size_t>(e.col));
}

void ErrorConfig::set(Edge e, bool v) {
    BitGrid &g = e.kind == EdgeKind::North ? north_ : west_;
    g.set(static_cast<size_t>(e.row), static_cast<size_t>(e.col), v);
}

size_t ErrorConfig::count() const {
    return north_.count() + west_.count();
}

ErrorConfig &ErrorConfig::operator^=(const ErrorConfig &other) {
    if (!(other.lattice_ == lattice_)) {
        throw std::invalid_argument("ErrorConfig lattice mismatch");
    }
    north_ ^= other.north_;
    west_ ^= other.west_;
    return *this;
}

AnyonConfig::AnyonConfig(int L) : grid_(static_cast<size_t>(TorusLattice(L).size())) {
}

AnyonConfig AnyonConfig::from_grid(BitGrid grid) {
    if (grid.side() == 0 || grid.side() % 2 != 0) {
        throw std::invalid_argument("anyon grid side must be a positive even integer");
    }
    if (grid.count() % 2 != 0) {
        throw std::invalid_argument("anyon configuration has odd total parity");
    }
    return AnyonConfig(std::move(grid));
}

AnyonConfig AnyonConfig::from_plaquettes(int L, std::span<const Plaquette> anyons) {
    TorusLattice lattice(L);
    BitGrid g(static_cast<size_t>(L));
    for (Plaquette p : anyons) {
        Plaquette q = lattice.wrap(p.row, p.col);
        g.flip(static_cast<size_t>(q.row), static_cast<size_t>(q.col));
    }
    return from_grid(std::move(g));
}

bool AnyonConfig::occupied(int row, int col) const {
    int L = size();
    return grid_.get(static_cast<size_t>(wrap_index(row, L)), static_cast<size_t>(wrap_index(col, L)));
}

double AnyonConfig::density() const {
    double n = static_cast<double>(grid_.side()) * static_cast<double>(grid_.side());
    return static_cast<double>(count()) / n;
}

std::vector<Plaquette> AnyonConfig::anyons() const {
    std::vector<Plaquette> out;
    size_t L = grid_.side();
    size_t wpr = grid_.words_per_row();
    auto words = grid_.words();
    for (size_t r = 0; r < L; r++) {
        for (size_t w = 0; w < wpr; w++) {
            uint64_t x = words[r * wpr + w];
            while (x != 0) {
                int bit = std::countr_zero(x);
                out.push_back(Plaquette{static_cast<int>(r), static_cast<int>(w * 64 + static_cast<size_t>(bit))});
                x &= x - 1;
            }
        }
    }
    return out;
}

ErrorConfig sample_errors(const TorusLattice &lattice, double p, uint64_t seed) {
    check_probability(p);
    ErrorConfig errors(lattice);
    if (p == 0.0) {
        return errors;
    }
    uint32_t plane = static_cast<uint32_t>(lattice.num_plaquettes());
    fill_bernoulli(errors.north(), p, seed, 0);
    fill_bernoulli(errors.west(), p, seed, plane);
    return errors;
}

AnyonConfig syndrome(const ErrorConfig &errors) {
    size_t L = static_cast<size_t>(errors.lattice().size());
    BitGrid out(L);
    simd::syndrome_rows(errors.north().words(), errors.west().words(), out.words(), L, out.words_per_row());
    return AnyonConfig::from_grid(std::move(out));
}

AnyonConfig sample_thermal_anyons(int L, double p, uint64_t seed) {
    check_probability(p);
    TorusLattice lattice(L);
    BitGrid g(static_cast<size_t>(L));
    for (uint64_t attempt = 0;; attempt++) {
        g.clear();
        if (p > 0.0) {
            fill_bernoulli(g, p, derive_seed(seed, {attempt}), 0);
        }
        if (g.count() % 2 == 0) {
            return AnyonConfig::from_grid(std::move(g));
        }
    }
}

int block_count(const AnyonConfig &config, Block block) {
    int n = 0;
    for (int dr = 0; dr < 2; dr++) {
        for (int dc = 0; dc < 2; dc++) {
            n += config.occupied(block.row + dr, block.col + dc) ? 1 : 0;
        }
    }
    return n;
}

AnyonConfig pair_annihilation_block(const AnyonConfig &config, Block block) {
    AnyonConfig out = config;
    if (block_count(config, block) % 2 == 0) {
        int L = config.size();
        for (int dr = 0; dr < 2; dr++) {
            for (int dc = 0; dc < 2; dc++) {
                out.grid_mut().set(static_cast<size_t>(wrap_index(block.row + dr, L)),
                                   static_cast<size_t>(wrap_index(block.col + dc, L)), false);
            }
        }
    }
    return out;
}

bool parity_coarse_block(const AnyonConfig &config, Block block) {
    return block_count(config, block) % 2 == 1;
}

namespace reference {

void annihilate_blocks(AnyonConfig &config, BlockPartition part) {
    int L = config.size();
    for (int bi = 0; bi < L / 2; bi++) {
        for (int bj = 0; bj < L / 2; bj++) {
            Block b = block_of(part, bi, bj);
            if (block_count(config, b) % 2 == 0) {
                for (int dr = 0; dr < 2; dr++) {
                    for (int dc = 0; dc < 2; dc++) {
                        config.grid_mut().set(static_cast<size_t>(wrap_index(b.row + dr, L)),
                                              static_cast<size_t>(wrap_index(b.col + dc, L)), false);
                    }
                }
            }
        }
    }
}

AnyonConfig coarse_grain(const AnyonConfig &config, BlockPartition part) {
    int L = config.size();
    if (L < 4) {
        throw std::invalid_argument("coarse graining needs L >= 4");
    }
    BitGrid out(static_cast<size_t>(L / 2));
    for (int bi = 0; bi < L / 2; bi++) {
        for (int bj = 0; bj < L / 2; bj++) {
            if (parity_coarse_block(config, block_of(part, bi, bj))) {
                out.set(static_cast<size_t>(bi), static_cast<size_t>(bj), true);
            }
        }
    }
    return AnyonConfig::from_grid(std::move(out));
}

}  // namespace reference

namespace packed {

void annihilate_blocks(AnyonConfig &config, BlockPartition part) {
    if (part.offset == 0) {
        annihilate_even_packed(config.grid_mut());
        return;
    }
    BitGrid shifted = shift_up_left(config.grid());
    annihilate_even_packed(shifted);
    config.grid_mut() = shift_down_right(shifted);
}

AnyonConfig coarse_grain(const AnyonConfig &config, BlockPartition part) {
    if (config.size() < 4) {
        throw std::invalid_argument("coarse graining needs L >= 4");
    }
    if (part.offset == 0) {
        return coarse_even_packed(config.grid());
    }
    return coarse_even_packed(shift_up_left(config.grid()));
}

}  // namespace packed

void annihilate_blocks(AnyonConfig &config, BlockPartition part) {
    if (simd::active_isa() == simd::Isa::Scalar) {
        reference::annihilate_blocks(config, part);
    } else {
        packed::annihilate_blocks(config, part);
    }
}

AnyonConfig coarse_grain(const AnyonConfig &config, BlockPartition part) {
    if (simd::active_isa() == simd::Isa::Scalar) {
        return reference::coarse_grain(config, part);
    }
    return packed::coarse_grain(config, part);
}

LogicalCoordinates logical_coordinates(const ErrorConfig &errors, const ErrorConfig &corrections) {
    ErrorConfig chain = errors ^ corrections;
    if (syndrome(chain).count() != 0) {
        throw std::invalid_argument("error and correction chains do not close: nonzero combined syndrome");
    }
    size_t L = static_cast<size_t>(chain.lattice().size());
    LogicalCoordinates out;
    size_t row_flips = 0;
    for (uint64_t w : chain.north().row(0)) {
        row_flips += static_cast<size_t>(std::popcount(w));
    }
    size_t col_flips = 0;
    for (size_t r = 0; r < L; r++) {
        col_flips += chain.west().get(r, 0) ? 1 : 0;
    }
    out.row_cut = row_flips % 2 == 1;
    out.col_cut = col_flips % 2 == 1;
    return out;
}

std::vector<Edge> vertex_star(const TorusLattice &lattice, int row, int col) {
    Plaquette p = lattice.wrap(row, col);
    Plaquette left = lattice.wrap(row, col - 1);
    Plaquette up = lattice.wrap(row - 1, col);
    return {
        Edge{EdgeKind::North, p.row, p.col},
        Edge{EdgeKind::North, left.row, left.col},
        Edge{EdgeKind::West, p.row, p.col},
        Edge{EdgeKind::West, up.row, up.col},
    };
}

std::string to_string(const AnyonConfig &config) {
    std::ostringstream out;
    int L = config.size();
    for (int r = 0; r < L; r++) {
        for (int c = 0; c < L; c++) {
            out << (config.occupied(r, c) ? '1' : '.');
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace mixrg
