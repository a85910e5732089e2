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

#ifndef MIXRG_LATTICE_TORUS_H
#define MIXRG_LATTICE_TORUS_H

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mixrg {

/// Square grid of bits with packed rows; the storage for anyon occupations
/// and for each orientation of edge flips.
class BitGrid {
   public:
    BitGrid() = default;
    explicit BitGrid(size_t side);

    size_t side() const {
        return side_;
    }
    size_t words_per_row() const {
        return wpr_;
    }

    bool get(size_t r, size_t c) const {
        return (words_[r * wpr_ + c / 64] >> (c % 64)) & 1;
    }
    void set(size_t r, size_t c, bool v) {
        uint64_t m = uint64_t{1} << (c % 64);
        uint64_t &w = words_[r * wpr_ + c / 64];
        w = v ? (w | m) : (w & ~m);
    }
    void flip(size_t r, size_t c) {
        words_[r * wpr_ + c / 64] ^= uint64_t{1} << (c % 64);
    }

    std::span<uint64_t> words() {
        return words_;
    }
    std::span<const uint64_t> words() const {
        return words_;
    }
    std::span<uint64_t> row(size_t r) {
        return std::span<uint64_t>(words_).subspan(r * wpr_, wpr_);
    }
    std::span<const uint64_t> row(size_t r) const {
        return std::span<const uint64_t>(words_).subspan(r * wpr_, wpr_);
    }

    size_t count() const;
    bool any() const;
    void clear();

    BitGrid &operator^=(const BitGrid &other);
    bool operator==(const BitGrid &other) const = default;

   private:
    size_t side_ = 0;
    size_t wpr_ = 0;
    std::vector<uint64_t> words_;
};

/// Plaquette coordinates (row, column) on the torus.
struct Plaquette {
    int row = 0;
    int col = 0;
    auto operator<=>(const Plaquette &) const = default;
};

/// Edge orientation relative to the plaquette that owns it.
enum class EdgeKind : uint8_t { North, West };

/// Edge owned by plaquette (row, col).
///
/// The north edge of (r, c) separates plaquettes (r - 1, c) and (r, c); the
/// west edge separates (r, c - 1) and (r, c). Every edge is owned by exactly
/// one plaquette, giving 2 L^2 edges.
struct Edge {
    EdgeKind kind = EdgeKind::North;
    int row = 0;
    int col = 0;
    auto operator<=>(const Edge &) const = default;
};

/// Periodic L x L plaquette lattice with qubits on the edges.
class TorusLattice {
   public:
    /// Throws std::invalid_argument unless L is a positive even integer.
    explicit TorusLattice(int L);

    int size() const {
        return L_;
    }
    size_t num_plaquettes() const {
        return static_cast<size_t>(L_) * static_cast<size_t>(L_);
    }
    size_t num_edges() const {
        return 2 * num_plaquettes();
    }
    Plaquette wrap(int row, int col) const;

    /// The two plaquettes bordering `e`.
    std::pair<Plaquette, Plaquette> neighbors(Edge e) const;

    bool operator==(const TorusLattice &) const = default;

   private:
    int L_;
};

bool is_power_of_two(int n);

/// Set of flipped edges (1 = X error applied).
class ErrorConfig {
   public:
    explicit ErrorConfig(TorusLattice lattice);

    const TorusLattice &lattice() const {
        return lattice_;
    }
    bool get(Edge e) const;
    void flip(Edge e);
    void set(Edge e, bool v);
    size_t count() const;

    const BitGrid &north() const {
        return north_;
    }
    const BitGrid &west() const {
        return west_;
    }
    BitGrid &north() {
        return north_;
    }
    BitGrid &west() {
        return west_;
    }

    ErrorConfig &operator^=(const ErrorConfig &other);
    friend ErrorConfig operator^(ErrorConfig a, const ErrorConfig &b) {
        a ^= b;
        return a;
    }
    bool operator==(const ErrorConfig &) const = default;

   private:
    TorusLattice lattice_;
    BitGrid north_;
    BitGrid west_;
};

/// m-anyon occupation of every plaquette. Total parity is always even on a
/// closed surface; constructors that accept raw data enforce it.
class AnyonConfig {
   public:
    /// Empty configuration on an L x L torus (L even and positive).
    explicit AnyonConfig(int L);

    /// Wraps an occupation grid; throws std::invalid_argument on odd parity.
    static AnyonConfig from_grid(BitGrid grid);
    static AnyonConfig from_plaquettes(int L, std::span<const Plaquette> anyons);

    int size() const {
        return static_cast<int>(grid_.side());
    }
    bool occupied(int row, int col) const;
    bool occupied(Plaquette p) const {
        return occupied(p.row, p.col);
    }
    size_t count() const {
        return grid_.count();
    }
    double density() const;
    std::vector<Plaquette> anyons() const;

    const BitGrid &grid() const {
        return grid_;
    }
    /// Mutable access for kernels that preserve parity (block annihilation).
    BitGrid &grid_mut() {
        return grid_;
    }

    bool operator==(const AnyonConfig &) const = default;

   private:
    explicit AnyonConfig(BitGrid grid) : grid_(std::move(grid)) {
    }
    BitGrid grid_;
};

/// 2 x 2 tiling of the plaquette grid; offset 0 gives the even blocks and
/// offset 1 the odd blocks (even blocks translated by one lattice spacing in
/// both directions).
struct BlockPartition {
    int offset = 0;
    static constexpr BlockPartition even() {
        return BlockPartition{0};
    }
    static constexpr BlockPartition odd() {
        return BlockPartition{1};
    }
};

/// 2 x 2 block identified by its top-left plaquette (wrapped on the torus).
struct Block {
    int row = 0;
    int col = 0;
};

/// Block (bi, bj) of `part`.
constexpr Block block_of(BlockPartition part, int bi, int bj) {
    return Block{2 * bi + part.offset, 2 * bj + part.offset};
}

/// Independent X flips on every edge with probability p. Deterministic for a
/// fixed seed. Throws std::invalid_argument if p is not in [0, 1].
ErrorConfig sample_errors(const TorusLattice &lattice, double p, uint64_t seed);

/// Plaquettes adjacent to an odd number of flipped edges.
AnyonConfig syndrome(const ErrorConfig &errors);

/// Anyons on independent plaquettes with probability p, conditioned on even
/// total parity (the m-sector of the toric code Gibbs distribution).
AnyonConfig sample_thermal_anyons(int L, double p, uint64_t seed);

/// Number of anyons in `block`.
int block_count(const AnyonConfig &config, Block block);

/// Clears the block if it holds an even number of anyons; otherwise returns
/// the configuration unchanged.
AnyonConfig pair_annihilation_block(const AnyonConfig &config, Block block);

/// Anyon-count parity of the block: the occupation of the coarse plaquette.
bool parity_coarse_block(const AnyonConfig &config, Block block);

/// Applies pair annihilation to every block of `part` in place.
void annihilate_blocks(AnyonConfig &config, BlockPartition part);

/// Coarse configuration on the L/2 lattice: coarse plaquette (i, j) holds the
/// parity of block (i, j) of `part`. Requires L >= 4 so the result is a valid
/// torus.
AnyonConfig coarse_grain(const AnyonConfig &config, BlockPartition part);

namespace reference {
void annihilate_blocks(AnyonConfig &config, BlockPartition part);
AnyonConfig coarse_grain(const AnyonConfig &config, BlockPartition part);
}  // namespace reference

namespace packed {
void annihilate_blocks(AnyonConfig &config, BlockPartition part);
AnyonConfig coarse_grain(const AnyonConfig &config, BlockPartition part);
}  // namespace packed

/// Homology class of a closed X chain.
struct LogicalCoordinates {
    /// Parity of flipped north edges in row 0: set by chains that wind in the
    /// row direction.
    bool row_cut = false;
    /// Parity of flipped west edges in column 0: set by chains that wind in
    /// the column direction.
    bool col_cut = false;

    bool trivial() const {
        return !row_cut && !col_cut;
    }
    bool operator==(const LogicalCoordinates &) const = default;
};

/// Homology bits of errors XOR corrections. Throws std::invalid_argument if
/// the combined chain has a nonzero syndrome.
LogicalCoordinates logical_coordinates(const ErrorConfig &errors, const ErrorConfig &corrections);

/// The four edges touching a vertex: the trivial closed chains. Vertex (r, c)
/// is the top-left corner of plaquette (r, c).
std::vector<Edge> vertex_star(const TorusLattice &lattice, int row, int col);

std::string to_string(const AnyonConfig &config);

}  // namespace mixrg

#endif
