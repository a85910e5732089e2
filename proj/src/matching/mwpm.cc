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


#include "mixrg/matching/mwpm.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "mixrg/common/rng.h"
#include "mixrg/matching/blossom.h"

namespace mixrg {

namespace {

constexpr int64_t kLengthScale = int64_t{1} << 36;
constexpr uint32_t kTiebreakMask = (1u << 24) - 1;
constexpr int kInitialNeighbors = 6;
constexpr int kMaxRefinements = 16;

int wrap(int x, int L) {
    x %= L;
    return x < 0 ? x + L : x;
}

uint64_t site_key(Plaquette p, int L) {
    return static_cast<uint64_t>(wrap(p.row, L)) * static_cast<uint64_t>(L) + static_cast<uint64_t>(wrap(p.col, L));
}

// Combined objective of a pairing: length first, then the tie-break key.
struct Objective {
    const MatchingProblem &problem;
    int n;

    int total() const {
        return problem.has_region ? 2 * n : n;
    }
    bool is_edge(int u, int v) const {
        if (u == v) {
            return false;
        }
        if (u < n && v < n) {
            return true;
        }
        if (u >= n && v >= n) {
            return true;
        }
        return (u < n ? u : v) + n == (u < n ? v : u);
    }
    int64_t cost(int u, int v) const {
        if (u < n && v < n) {
            return problem.distance(u, v) * kLengthScale +
                   pair_tiebreak(problem.nodes[u], problem.nodes[v], problem.L);
        }
        if (u >= n && v >= n) {
            return 0;
        }
        int real = u < n ? u : v;
        return problem.boundary_distance(real) * kLengthScale + boundary_tiebreak(problem.nodes[real], problem.L);
    }
};

struct SparseSolve {
    BlossomResult result;
    bool perfect = false;
};

SparseSolve solve_on(const Objective &obj, const std::vector<std::pair<int, int>> &edges, int64_t offset) {
    std::vector<WeightedEdge> we;
    we.reserve(edges.size());
    for (auto [u, v] : edges) {
        we.push_back(WeightedEdge{u, v, offset - obj.cost(u, v)});
    }
    SparseSolve s;
    s.result = max_weight_matching(obj.total(), we, true, true);
    s.perfect = std::all_of(s.result.mate.begin(), s.result.mate.end(), [](int m) { return m >= 0; });
    return s;
}

std::vector<std::vector<int>> ancestor_chains(const BlossomResult &r) {
    std::vector<std::vector<int>> chains(static_cast<size_t>(r.n));
    for (int v = 0; v < r.n; v++) {
        for (int b = r.parent[v]; b != -1; b = r.parent[b]) {
            chains[v].push_back(b);
        }
        std::reverse(chains[v].begin(), chains[v].end());
    }
    return chains;
}

int64_t certificate_slack(
    const BlossomResult &r, const std::vector<std::vector<int>> &chains, int u, int v, int64_t weight) {
    int64_t s = r.dual[u] + r.dual[v] - 2 * weight;
    const std::vector<int> &a = chains[u];
    const std::vector<int> &b = chains[v];
    for (size_t i = 0; i < a.size() && i < b.size() && a[i] == b[i]; i++) {
        s += 2 * r.dual[a[i]];
    }
    return s;
}

Matching extract(const MatchingProblem &problem, const std::vector<int> &mate) {
    int n = static_cast<int>(problem.nodes.size());
    Matching m;
    m.partner.assign(n, kBoundary);
    for (int i = 0; i < n; i++) {
        int j = mate[i];
        if (j < n) {
            m.partner[i] = j;
            if (i < j) {
                m.weight += problem.distance(i, j);
            }
        } else {
            m.weight += problem.boundary_distance(i);
        }
    }
    return m;
}

void flip_global(ErrorConfig &out, EdgeKind kind, int row, int col, int L) {
    out.flip(Edge{kind, wrap(row, L), wrap(col, L)});
}

}  // namespace

int torus_distance(Plaquette a, Plaquette b, int L) {
    int dr = std::abs(wrap(a.row, L) - wrap(b.row, L));
    int dc = std::abs(wrap(a.col, L) - wrap(b.col, L));
    return std::min(dr, L - dr) + std::min(dc, L - dc);
}

Plaquette Region::local(Plaquette p, int L) const {
    return Plaquette{wrap(p.row - origin.row, L), wrap(p.col - origin.col, L)};
}

bool Region::contains(Plaquette p, int L) const {
    Plaquette q = local(p, L);
    return q.row < side && q.col < side;
}

int Region::boundary_distance(Plaquette p, int L) const {
    Plaquette q = local(p, L);
    return 1 + std::min({q.row, q.col, side - 1 - q.row, side - 1 - q.col});
}

MatchingProblem MatchingProblem::torus(int L, std::vector<Plaquette> nodes) {
    TorusLattice check(L);
    MatchingProblem p;
    p.L = L;
    p.nodes = std::move(nodes);
    return p;
}

MatchingProblem MatchingProblem::truncated(int L, Region region, std::vector<Plaquette> nodes) {
    TorusLattice check(L);
    if (region.side < 1 || region.side > L) {
        throw std::invalid_argument("region side must lie in [1, L]");
    }
    MatchingProblem p;
    p.L = L;
    p.has_region = true;
    p.region = region;
    for (const Plaquette &q : nodes) {
        if (!region.contains(q, L)) {
            throw std::invalid_argument("truncated matching node outside its region");
        }
    }
    p.nodes = std::move(nodes);
    return p;
}

int MatchingProblem::distance(int i, int j) const {
    if (!has_region) {
        return torus_distance(nodes[i], nodes[j], L);
    }
    Plaquette a = region.local(nodes[i], L);
    Plaquette b = region.local(nodes[j], L);
    return std::abs(a.row - b.row) + std::abs(a.col - b.col);
}

int MatchingProblem::boundary_distance(int i) const {
    if (!has_region) {
        throw std::logic_error("torus problems have no boundary");
    }
    return region.boundary_distance(nodes[i], L);
}

std::vector<std::pair<int, int>> Matching::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < static_cast<int>(partner.size()); i++) {
        if (partner[i] == kBoundary) {
            out.emplace_back(i, kBoundary);
        } else if (i < partner[i]) {
            out.emplace_back(i, partner[i]);
        }
    }
    return out;
}

uint32_t pair_tiebreak(Plaquette a, Plaquette b, int L) {
    uint64_t ka = site_key(a, L);
    uint64_t kb = site_key(b, L);
    if (ka > kb) {
        std::swap(ka, kb);
    }
    return static_cast<uint32_t>(mix64(mix64(ka) ^ (kb + 0x5851F42D4C957F2DULL))) & kTiebreakMask;
}

uint32_t boundary_tiebreak(Plaquette a, int L) {
    return static_cast<uint32_t>(mix64(site_key(a, L) ^ 0xD6E8FEB86659FD93ULL)) & kTiebreakMask;
}

Matching solve_mwpm(const MatchingProblem &problem) {
    int n = static_cast<int>(problem.nodes.size());
    if (!problem.has_region && n % 2 != 0) {
        throw InfeasibleMatchingError("torus matching needs an even number of anyons, got " + std::to_string(n));
    }
    Matching empty;
    if (n == 0) {
        return empty;
    }
    Objective obj{problem, n};
    int total = obj.total();
    int max_length = problem.has_region ? 2 * problem.region.side : problem.L;
    int64_t offset = (max_length + 1) * kLengthScale;
    std::vector<std::vector<int>> nearest(n);
    std::vector<std::pair<int, int>> cand;
    for (int i = 0; i < n; i++) {
        cand.clear();
        for (int j = 0; j < n; j++) {
            if (j != i) {
                cand.emplace_back(problem.distance(i, j), j);
            }
        }
        size_t k = std::min<size_t>(cand.size(), kInitialNeighbors);
        std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end());
        for (size_t t = 0; t < k; t++) {
            nearest[i].push_back(cand[t].second);
        }
    }

    std::vector<char> present(static_cast<size_t>(total) * static_cast<size_t>(total), 0);
    std::vector<std::pair<int, int>> edges;
    auto add = [&](int u, int v) {
        if (u > v) {
            std::swap(u, v);
        }
        char &flag = present[static_cast<size_t>(u) * static_cast<size_t>(total) + static_cast<size_t>(v)];
        if (!flag) {
            flag = 1;
            edges.emplace_back(u, v);
        }
    };
    for (int i = 0; i < n; i++) {
        for (int j : nearest[i]) {
            add(i, j);
            if (problem.has_region) {
                add(i + n, j + n);
            }
        }
        if (problem.has_region) {
            add(i, i + n);
        }
    }

    for (int round = 0;; round++) {
        bool complete = round >= kMaxRefinements;
        if (complete) {
            for (int u = 0; u < total; u++) {
                for (int v = u + 1; v < total; v++) {
                    if (obj.is_edge(u, v)) {
                        add(u, v);
                    }
                }
            }
        }
        SparseSolve s = solve_on(obj, edges, offset);
        if (!s.perfect) {
            if (complete) {
                throw std::logic_error("matching solver failed to find a perfect matching");
            }
            round = kMaxRefinements - 1;
            continue;
        }
        if (complete) {
            return extract(problem, s.result.mate);
        }
        std::vector<std::vector<int>> chains = ancestor_chains(s.result);
        size_t before = edges.size();
        for (int u = 0; u < total; u++) {
            for (int v = u + 1; v < total; v++) {
                if (present[static_cast<size_t>(u) * static_cast<size_t>(total) + static_cast<size_t>(v)] ||
                    !obj.is_edge(u, v)) {
                    continue;
                }
                // Tie-break keys and blossom duals only raise the slack.
                int64_t length = 0;
                if (u < n && v < n) {
                    length = problem.distance(u, v);
                } else if (u < n || v < n) {
                    length = problem.boundary_distance(u < n ? u : v);
                }
                if (s.result.dual[u] + s.result.dual[v] - 2 * (offset - length * kLengthScale) >= 0) {
                    continue;
                }
                if (certificate_slack(s.result, chains, u, v, offset - obj.cost(u, v)) < 0) {
                    add(u, v);
                }
            }
        }
        if (edges.size() == before) {
            return extract(problem, s.result.mate);
        }
    }
}

Matching brute_force_mwpm(const MatchingProblem &problem) {
    int n = static_cast<int>(problem.nodes.size());
    if (!problem.has_region && n % 2 != 0) {
        throw InfeasibleMatchingError("torus matching needs an even number of anyons, got " + std::to_string(n));
    }
    if (n > 14) {
        throw std::invalid_argument("brute-force matching limited to 14 nodes");
    }
    Objective obj{problem, n};
    std::vector<int> partner(n, -2);
    std::vector<int> best;
    int64_t best_cost = std::numeric_limits<int64_t>::max();
    std::function<void(int64_t)> rec = [&](int64_t cost) {
        int i = 0;
        while (i < n && partner[i] != -2) {
            i++;
        }
        if (i == n) {
            if (cost < best_cost) {
                best_cost = cost;
                best = partner;
            }
            return;
        }
        if (problem.has_region) {
            partner[i] = kBoundary;
            rec(cost + obj.cost(i, i + n));
            partner[i] = -2;
        }
        for (int j = i + 1; j < n; j++) {
            if (partner[j] == -2) {
                partner[i] = j;
                partner[j] = i;
                rec(cost + obj.cost(i, j));
                partner[i] = partner[j] = -2;
            }
        }
    };
    rec(0);
    Matching m;
    m.partner = best;
    for (int i = 0; i < n; i++) {
        if (best[i] == kBoundary) {
            m.weight += problem.boundary_distance(i);
        } else if (i < best[i]) {
            m.weight += problem.distance(i, best[i]);
        }
    }
    return m;
}

void validate_matching(const MatchingProblem &problem, const Matching &matching) {
    int n = static_cast<int>(problem.nodes.size());
    if (static_cast<int>(matching.partner.size()) != n) {
        throw std::logic_error("matching does not cover every node");
    }
    int64_t weight = 0;
    for (int i = 0; i < n; i++) {
        int j = matching.partner[i];
        if (j == kBoundary) {
            if (!problem.has_region) {
                throw std::logic_error("boundary match in a torus problem");
            }
            weight += problem.boundary_distance(i);
            continue;
        }
        if (j < 0 || j >= n || j == i || matching.partner[j] != i) {
            throw std::logic_error("matching is not a symmetric pairing at node " + std::to_string(i));
        }
        if (i < j) {
            weight += problem.distance(i, j);
        }
    }
    if (weight != matching.weight) {
        throw std::logic_error("matching weight differs from the sum of its string lengths");
    }
}

ErrorConfig apply_correction(const MatchingProblem &problem, const Matching &matching) {
    int L = problem.L;
    ErrorConfig out{TorusLattice(L)};
    int n = static_cast<int>(problem.nodes.size());
    Plaquette o = problem.has_region ? problem.region.origin : Plaquette{0, 0};
    for (int i = 0; i < n; i++) {
        int j = matching.partner[i];
        if (j != kBoundary && j < i) {
            continue;
        }
        if (j == kBoundary) {
            int s = problem.region.side;
            Plaquette q = problem.region.local(problem.nodes[i], L);
            int dists[4] = {q.row, q.col, s - 1 - q.row, s - 1 - q.col};
            int side = static_cast<int>(std::min_element(dists, dists + 4) - dists);
            switch (side) {
                case 0:
                    for (int k = q.row; k >= 0; k--) {
                        flip_global(out, EdgeKind::North, o.row + k, o.col + q.col, L);
                    }
                    break;
                case 1:
                    for (int k = q.col; k >= 0; k--) {
                        flip_global(out, EdgeKind::West, o.row + q.row, o.col + k, L);
                    }
                    break;
                case 2:
                    for (int k = q.row; k < s; k++) {
                        flip_global(out, EdgeKind::North, o.row + k + 1, o.col + q.col, L);
                    }
                    break;
                default:
                    for (int k = q.col; k < s; k++) {
                        flip_global(out, EdgeKind::West, o.row + q.row, o.col + k + 1, L);
                    }
                    break;
            }
            continue;
        }
        Plaquette a, b;
        int dc, dr;
        if (problem.has_region) {
            a = problem.region.local(problem.nodes[i], L);
            b = problem.region.local(problem.nodes[j], L);
            dc = b.col - a.col;
            dr = b.row - a.row;
        } else {
            a = problem.nodes[i];
            b = problem.nodes[j];
            int fc = wrap(b.col - a.col, L);
            dc = (fc <= L - fc) ? fc : fc - L;
            int fr = wrap(b.row - a.row, L);
            dr = (fr <= L - fr) ? fr : fr - L;
        }
        int r = a.row, c = a.col;
        for (; dc > 0; dc--, c++) {
            flip_global(out, EdgeKind::West, o.row + r, o.col + c + 1, L);
        }
        for (; dc < 0; dc++, c--) {
            flip_global(out, EdgeKind::West, o.row + r, o.col + c, L);
        }
        for (; dr > 0; dr--, r++) {
            flip_global(out, EdgeKind::North, o.row + r + 1, o.col + c, L);
        }
        for (; dr < 0; dr++, r--) {
            flip_global(out, EdgeKind::North, o.row + r, o.col + c, L);
        }
    }
    return out;
}

bool decode_sample_fails(double p, int L, uint64_t sample_seed) {
    TorusLattice lattice(L);
    ErrorConfig errors = sample_errors(lattice, p, sample_seed);
    MatchingProblem problem = MatchingProblem::torus(L, syndrome(errors).anyons());
    ErrorConfig correction = apply_correction(problem, solve_mwpm(problem));
    return !logical_coordinates(errors, correction).trivial();
}

DecodeEstimate decode_failure_rate(double p, int L, int N, uint64_t seed) {
    if (N < 1) {
        throw std::invalid_argument("sample count must be positive");
    }
    DecodeEstimate e;
    e.p = p;
    e.L = L;
    e.N = N;
    for (int s = 0; s < N; s++) {
        e.failures += decode_sample_fails(p, L, derive_seed(seed, {static_cast<uint64_t>(s)})) ? 1 : 0;
    }
    e.rate = static_cast<double>(e.failures) / N;
    e.std_error = std::sqrt(e.rate * (1 - e.rate) / N);
    return e;
}

}  // namespace mixrg
