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


#include "mixrg/tmwpm/tmwpm.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "mixrg/common/rng.h"

namespace mixrg {

namespace {

int wrap(int x, int L) {
    x %= L;
    return x < 0 ? x + L : x;
}

}  // namespace

void TruncationGeometry::validate() const {
    TorusLattice check(L);
    if (a < 0) {
        throw std::invalid_argument("buffer width a must be non-negative, got " + std::to_string(a));
    }
    if (b < 1 || b > L) {
        throw std::invalid_argument("block side b must lie in [1, L], got " + std::to_string(b));
    }
}

Region TruncationGeometry::region(Plaquette block) const {
    return Region{Plaquette{wrap(block.row - a, L), wrap(block.col - a, L)}, std::min(region_side(), L)};
}

bool TruncationGeometry::in_block(Plaquette p, Plaquette block) const {
    return wrap(p.row - block.row, L) < b && wrap(p.col - block.col, L) < b;
}

TruncationGeometry TruncationGeometry::scaled(int a, int b_ratio, int l_ratio) {
    TruncationGeometry g{a, b_ratio * a, l_ratio * a};
    g.validate();
    return g;
}

TruncatedMatching truncated_mwpm(const AnyonConfig &config, const TruncationGeometry &geom, Plaquette block) {
    geom.validate();
    if (config.size() != geom.L) {
        throw std::invalid_argument("anyon configuration and geometry disagree on L");
    }
    TruncatedMatching out;
    if (geom.whole_torus()) {
        out.problem = MatchingProblem::torus(geom.L, config.anyons());
    } else {
        Region r = geom.region(block);
        std::vector<Plaquette> nodes;
        for (const Plaquette &p : config.anyons()) {
            if (r.contains(p, geom.L)) {
                nodes.push_back(p);
            }
        }
        out.problem = MatchingProblem::truncated(geom.L, r, std::move(nodes));
    }
    out.matching = solve_mwpm(out.problem);
    for (int i = 0; i < static_cast<int>(out.problem.nodes.size()); i++) {
        int j = out.matching.partner[i];
        bool i_in = geom.in_block(out.problem.nodes[i], block);
        if (j == kBoundary) {
            if (i_in) {
                out.accepted.emplace_back(i, kBoundary);
            }
            continue;
        }
        bool j_in = geom.in_block(out.problem.nodes[j], block);
        if (i < j && (i_in || j_in)) {
            out.accepted.emplace_back(i_in ? i : j, i_in ? j : i);
        }
    }
    return out;
}

bool agrees_on_block(const AnyonConfig &config, const TruncationGeometry &geom, Plaquette block) {
    std::vector<Plaquette> all = config.anyons();
    bool any_in_block = std::any_of(all.begin(), all.end(), [&](Plaquette p) { return geom.in_block(p, block); });
    if (!any_in_block) {
        return true;
    }
    MatchingProblem global = MatchingProblem::torus(geom.L, all);
    Matching gm = solve_mwpm(global);
    TruncatedMatching tm = truncated_mwpm(config, geom, block);
    std::map<Plaquette, Plaquette> global_partner;
    for (int i = 0; i < static_cast<int>(all.size()); i++) {
        global_partner[all[i]] = all[gm.partner[i]];
    }
    const std::vector<Plaquette> &nodes = tm.problem.nodes;
    for (int i = 0; i < static_cast<int>(nodes.size()); i++) {
        if (!geom.in_block(nodes[i], block)) {
            continue;
        }
        int j = tm.matching.partner[i];
        if (j == kBoundary || global_partner.at(nodes[i]) != nodes[j]) {
            return false;
        }
    }
    return true;
}

bool agreement_sample(double p, const TruncationGeometry &geom, uint64_t sample_seed) {
    AnyonConfig config = syndrome(sample_errors(TorusLattice(geom.L), p, sample_seed));
    return agrees_on_block(config, geom, Plaquette{geom.a % geom.L, geom.a % geom.L});
}

AgreementEstimate agreement_probability(double p, int a, int b, int L, int N, uint64_t seed) {
    TruncationGeometry geom{a, b, L};
    geom.validate();
    if (N < 1) {
        throw std::invalid_argument("sample count must be positive");
    }
    AgreementEstimate e;
    e.p = p;
    e.a = a;
    e.b = b;
    e.L = L;
    e.N = N;
    e.seed = seed;
    for (int s = 0; s < N; s++) {
        e.agreements += agreement_sample(p, geom, derive_seed(seed, {static_cast<uint64_t>(s)})) ? 1 : 0;
    }
    e.mu = static_cast<double>(e.agreements) / N;
    e.std_error = std::sqrt(e.mu * (1 - e.mu) / N);
    return e;
}

TmwpmOutcome tmwpm_channel(const ErrorConfig &errors, int a, int b) {
    int L = errors.lattice().size();
    TruncationGeometry geom{a, b, L};
    geom.validate();
    if (L % b != 0) {
        throw std::invalid_argument("block side must divide L");
    }
    TmwpmOutcome out{ErrorConfig(errors.lattice()), 0, std::nullopt};
    for (int br = 0; br < L; br += b) {
        for (int bc = 0; bc < L; bc += b) {
            AnyonConfig current = syndrome(errors ^ out.correction);
            TruncatedMatching tm = truncated_mwpm(current, geom, Plaquette{br, bc});
            Matching accepted;
            accepted.partner.assign(tm.problem.nodes.size(), -2);
            for (auto [i, j] : tm.accepted) {
                accepted.partner[i] = j;
                if (j != kBoundary) {
                    accepted.partner[j] = i;
                }
            }
            // Nodes outside the accepted set are left in place.
            MatchingProblem sub = tm.problem;
            std::vector<int> keep;
            std::vector<int> index(tm.problem.nodes.size(), -1);
            for (int i = 0; i < static_cast<int>(accepted.partner.size()); i++) {
                if (accepted.partner[i] != -2) {
                    index[i] = static_cast<int>(keep.size());
                    keep.push_back(i);
                }
            }
            sub.nodes.clear();
            Matching sub_matching;
            for (int i : keep) {
                sub.nodes.push_back(tm.problem.nodes[i]);
                int j = accepted.partner[i];
                sub_matching.partner.push_back(j == kBoundary ? kBoundary : index[j]);
            }
            out.correction ^= apply_correction(sub, sub_matching);
        }
    }
    AnyonConfig residual = syndrome(errors ^ out.correction);
    out.residual = residual.count();
    if (out.residual == 0) {
        out.logical = logical_coordinates(errors, out.correction);
    }
    return out;
}

}  // namespace mixrg
