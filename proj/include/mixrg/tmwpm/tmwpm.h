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


#ifndef MIXRG_TMWPM_TMWPM_H
#define MIXRG_TMWPM_TMWPM_H

#include <cstdint>
#include <optional>
#include <vector>

#include "mixrg/lattice/torus.h"
#include "mixrg/matching/mwpm.h"

namespace mixrg {

/// A b x b block B with a buffer F of width a around it, on an L x L torus.
/// When b + 2a >= L the buffer covers the torus and the truncated problem is
/// the global one.
struct TruncationGeometry {
    int a = 0;
    int b = 1;
    int L = 2;

    /// Throws std::invalid_argument unless a >= 0, 1 <= b <= L and L is a
    /// valid torus size.
    void validate() const;
    bool whole_torus() const {
        return b + 2 * a >= L;
    }
    int region_side() const {
        return b + 2 * a;
    }
    /// The window B u F for the block whose top-left plaquette is `block`.
    Region region(Plaquette block) const;
    bool in_block(Plaquette p, Plaquette block) const;

    /// Geometry with L = l_ratio * a and b = b_ratio * a.
    static TruncationGeometry scaled(int a, int b_ratio = 2, int l_ratio = 8);
};

/// Truncated matching of one block: the problem on B u F, its exact
/// solution, and the accepted pairs (those touching B).
struct TruncatedMatching {
    MatchingProblem problem;
    Matching matching;
    /// (i, j) with i in B, j a node index or kBoundary; each pair once.
    std::vector<std::pair<int, int>> accepted;
};

TruncatedMatching truncated_mwpm(const AnyonConfig &config, const TruncationGeometry &geom, Plaquette block);

/// Whether every anyon in B has the same partner in the global matching of
/// `config` and in the truncated matching of the block. Boundary partners
/// never agree with global partners.
bool agrees_on_block(const AnyonConfig &config, const TruncationGeometry &geom, Plaquette block);

struct AgreementEstimate {
    double p = 0;
    int a = 0;
    int b = 0;
    int L = 0;
    int N = 0;
    uint64_t seed = 0;
    int agreements = 0;
    double mu = 0;
    double std_error = 0;
};

/// One agreement trial on the syndrome of errors drawn from `sample_seed`,
/// for the block whose buffer starts at the origin.
bool agreement_sample(double p, const TruncationGeometry &geom, uint64_t sample_seed);

/// Fraction of N samples (sample s uses derive_seed(seed, {s})) on which the
/// truncated and global matchings agree on the block.
AgreementEstimate agreement_probability(double p, int a, int b, int L, int N, uint64_t seed);

struct TmwpmOutcome {
    ErrorConfig correction;
    /// Anyons left after every block has acted.
    size_t residual = 0;
    /// Homology of errors + correction, present when no anyons remain.
    std::optional<LogicalCoordinates> logical;
};

/// Applies the truncated channel of every block of the b x b tiling in
/// raster order, each block acting on the syndrome left by its
/// predecessors. Requires b to divide L.
TmwpmOutcome tmwpm_channel(const ErrorConfig &errors, int a, int b);

}  // namespace mixrg

#endif
