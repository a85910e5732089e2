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

#include "mixrg/lab/channels.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mixrg/flow/flowmaps.h"

namespace mixrg {

namespace {

using cd = std::complex<double>;

Eigen::Index dim_of(int n) {
    return Eigen::Index{1} << n;
}

CMatrix pauli_x() {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

CMatrix pauli_z() {
    CMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

void check_prob(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("probability must lie in [0, 1], got " + std::to_string(p));
    }
}

void check_odd_block(int b) {
    if (b < 1 || b % 2 == 0) {
        throw std::invalid_argument("majority vote needs an odd block size, got " + std::to_string(b));
    }
}

// Pauli strings on the 8-qubit torus. Bit (7 - q) of a basis index is qubit q.
constexpr int kTorusQubits = 8;

unsigned qubit_mask(std::initializer_list<int> qubits) {
    unsigned m = 0;
    for (int q : qubits) {
        m ^= 1u << (kTorusQubits - 1 - q);
    }
    return m;
}

CMatrix x_string(unsigned mask) {
    Eigen::Index d = dim_of(kTorusQubits);
    CMatrix m = CMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; i++) {
        m(i ^ static_cast<Eigen::Index>(mask), i) = 1;
    }
    return m;
}

CMatrix z_string(unsigned mask) {
    Eigen::Index d = dim_of(kTorusQubits);
    CMatrix m = CMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; i++) {
        m(i, i) = (std::popcount(static_cast<unsigned>(i) & mask) % 2) ? -1.0 : 1.0;
    }
    return m;
}

int north(int r, int c) {
    return 2 * ((r + 2) % 2) + (c + 2) % 2;
}

int west(int r, int c) {
    return 4 + 2 * ((r + 2) % 2) + (c + 2) % 2;
}

const int kPlaquettes[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};

unsigned plaquette_mask(int i) {
    int r = kPlaquettes[i][0], c = kPlaquettes[i][1];
    return qubit_mask({north(r, c), north(r + 1, c), west(r, c), west(r, c + 1)});
}

unsigned vertex_mask(int i) {
    int r = kPlaquettes[i][0], c = kPlaquettes[i][1];
    return qubit_mask({north(r, c), north(r, c - 1), west(r, c), west(r - 1, c)});
}

// prod_i (1/2)(I + s_i S_i) over the four plaquette (X) or vertex (Z)
// stabilizers, expanded as a sum over subsets so that only Pauli strings
// are ever formed.
CMatrix stabilizer_product(bool x_type, const double s[4]) {
    Eigen::Index d = dim_of(kTorusQubits);
    CMatrix out = CMatrix::Zero(d, d);
    for (unsigned subset = 0; subset < 16; subset++) {
        double coef = 1.0 / 16.0;
        unsigned mask = 0;
        for (int i = 0; i < 4; i++) {
            if ((subset >> i) & 1) {
                coef *= s[i];
                mask ^= x_type ? plaquette_mask(i) : vertex_mask(i);
            }
        }
        if (coef != 0.0) {
            out += coef * (x_type ? x_string(mask) : z_string(mask));
        }
    }
    return out;
}

CMatrix site1_projector(int bit) {
    Eigen::Index d = dim_of(kTorusQubits);
    return (CMatrix::Identity(d, d) + (bit ? -1.0 : 1.0) * x_string(plaquette_mask(0))) * 0.5;
}

// Diagonal of the Z string that moves the pattern m to (parity, 0, 0, 0):
// Z_12^m2 Z_13^(m3^m4) Z_34^m4 on the inner edges.
Eigen::VectorXcd fusion_signs(unsigned m) {
    unsigned m2 = (m >> 1) & 1, m3 = (m >> 2) & 1, m4 = (m >> 3) & 1;
    unsigned mask = 0;
    if (m2) {
        mask ^= qubit_mask({west(0, 1)});
    }
    if (m3 ^ m4) {
        mask ^= qubit_mask({north(1, 0)});
    }
    if (m4) {
        mask ^= qubit_mask({west(1, 1)});
    }
    Eigen::Index d = dim_of(kTorusQubits);
    Eigen::VectorXcd v(d);
    for (Eigen::Index i = 0; i < d; i++) {
        v(i) = (std::popcount(static_cast<unsigned>(i) & mask) % 2) ? -1.0 : 1.0;
    }
    return v;
}

DenseState thermal_state(double beta) {
    double p = thermal_p_of_beta(beta);
    // (1-p) P+ + p P- = (1/2)(I + (1-2p) S) for each stabilizer S.
    double c[4] = {1 - 2 * p, 1 - 2 * p, 1 - 2 * p, 1 - 2 * p};
    CMatrix rho = stabilizer_product(true, c) * stabilizer_product(false, c);
    rho /= rho.trace();
    return DenseState(rho, kTorusQubits);
}

DenseState spt_state(double p, int L) {
    if (L < 2 || 2 * L > kMaxDenseQubits) {
        throw std::invalid_argument("spt chain needs 2 <= L <= 6 sites, got " + std::to_string(L));
    }
    int n = 2 * L;
    Eigen::Index d = dim_of(n);
    CVector psi = CVector::Zero(d);
    auto bit = [&](Eigen::Index x, int q) {
        return (x >> (n - 1 - q)) & 1;
    };
    for (Eigen::Index x = 0; x < d; x++) {
        bool ok = true;
        for (int i = 0; i < L; i++) {
            if (bit(x, 2 * i + 1) != bit(x, (2 * i + 2) % n)) {
                ok = false;
            }
        }
        if (ok) {
            psi(x) = 1;
        }
    }
    DenseState s = DenseState::pure(psi);
    DenseChannel noise = xx_dephasing(p);
    for (int i = 0; i < L; i++) {
        s = apply_channel(noise, s, {2 * i, 2 * i + 1});
    }
    return s;
}

}  // namespace

DenseChannel x_dephasing(double p) {
    check_prob(p);
    return DenseChannel(1, 1, {std::sqrt(1 - p) * CMatrix::Identity(2, 2), std::sqrt(p) * pauli_x()});
}

DenseChannel z_dephasing(double p) {
    check_prob(p);
    return DenseChannel(1, 1, {std::sqrt(1 - p) * CMatrix::Identity(2, 2), std::sqrt(p) * pauli_z()});
}

DenseChannel xx_dephasing(double p) {
    check_prob(p);
    return DenseChannel(2, 2, {std::sqrt(1 - p) * CMatrix::Identity(4, 4), std::sqrt(p) * kron(pauli_x(), pauli_x())});
}

DenseChannel reset_channel() {
    CMatrix k0 = CMatrix::Zero(2, 2), k1 = CMatrix::Zero(2, 2);
    k0(0, 0) = 1;
    k1(0, 1) = 1;
    return DenseChannel(1, 1, {k0, k1});
}

DenseChannel partial_trace_channel(int total, int traced) {
    if (traced < 0 || traced > total) {
        throw std::invalid_argument("cannot trace out more qubits than exist");
    }
    int kept = total - traced;
    std::vector<CMatrix> kraus;
    Eigen::Index dk = dim_of(kept), dt = dim_of(traced);
    for (Eigen::Index t = 0; t < dt; t++) {
        CMatrix k = CMatrix::Zero(dk, dk * dt);
        for (Eigen::Index i = 0; i < dk; i++) {
            k(i, i * dt + t) = 1;
        }
        kraus.push_back(std::move(k));
    }
    return DenseChannel(total, kept, std::move(kraus));
}

DenseChannel repetition_encoding(int b) {
    if (b < 1) {
        throw std::invalid_argument("encoding needs at least one qubit");
    }
    Eigen::Index d = dim_of(b);
    CMatrix w = CMatrix::Zero(d, 2);
    w(0, 0) = 1;
    w(d - 1, 1) = 1;
    return DenseChannel(1, b, {w});
}

DenseChannel tensor_power(const DenseChannel &single, int n) {
    if (n < 1) {
        throw std::invalid_argument("tensor power needs n >= 1");
    }
    DenseChannel out = single;
    for (int k = 1; k < n; k++) {
        out = tensor(out, single);
    }
    return out;
}

DenseChannel majority_vote_channel(int b) {
    check_odd_block(b);
    if (b > 7) {
        throw std::invalid_argument("majority vote is limited to b <= 7 in the dense lab");
    }
    Eigen::Index d = dim_of(b);
    std::vector<CMatrix> kraus(static_cast<size_t>(dim_of(b - 1)), CMatrix::Zero(2, d));
    for (Eigen::Index s = 0; s < d; s++) {
        int ones = std::popcount(static_cast<unsigned>(s));
        int maj = 2 * ones > b ? 1 : 0;
        unsigned diff = static_cast<unsigned>(s ^ (s >> 1)) & static_cast<unsigned>(dim_of(b - 1) - 1);
        kraus[diff](maj, s) = 1;
    }
    return DenseChannel(b, 1, std::move(kraus));
}

std::string_view state_kind_name(StateKind kind) {
    switch (kind) {
        case StateKind::GhzX:
            return "ghz-x";
        case StateKind::GhzZ:
            return "ghz-z";
        case StateKind::Thermal:
            return "thermal";
        case StateKind::Spt:
            return "spt";
    }
    throw std::invalid_argument("unknown state kind");
}

StateKind parse_state_kind(std::string_view name) {
    for (StateKind k : {StateKind::GhzX, StateKind::GhzZ, StateKind::Thermal, StateKind::Spt}) {
        if (state_kind_name(k) == name) {
            return k;
        }
    }
    throw std::invalid_argument("unknown state kind '" + std::string(name) + "'");
}

DenseState ghz_pure(int n) {
    if (n < 1 || n > kMaxDenseQubits) {
        throw std::invalid_argument("GHZ size out of range");
    }
    CVector psi = CVector::Zero(dim_of(n));
    psi(0) = 1;
    psi(dim_of(n) - 1) = 1;
    return DenseState::pure(psi);
}

DenseState bell_pair() {
    return ghz_pure(2);
}

DenseState build_state(StateKind kind, double param, int L) {
    switch (kind) {
        case StateKind::GhzX: {
            check_prob(param);
            DenseState s = ghz_pure(L);
            DenseChannel noise = x_dephasing(param);
            for (int q = 0; q < L; q++) {
                s = apply_channel(noise, s, {q});
            }
            return s;
        }
        case StateKind::GhzZ: {
            check_prob(param);
            if (L < 1 || L > kMaxDenseQubits) {
                throw std::invalid_argument("GHZ size out of range");
            }
            Eigen::Index d = dim_of(L);
            CMatrix rho = CMatrix::Zero(d, d);
            double off = 0.5 * std::pow(1 - 2 * param, L);
            rho(0, 0) = 0.5;
            rho(d - 1, d - 1) = 0.5;
            rho(0, d - 1) = off;
            rho(d - 1, 0) = off;
            return DenseState(rho, L);
        }
        case StateKind::Thermal:
            if (L != 2) {
                throw std::invalid_argument("the dense thermal state exists only on the L = 2 torus");
            }
            return thermal_state(param);
        case StateKind::Spt:
            check_prob(param);
            return spt_state(param, L);
    }
    throw std::invalid_argument("unknown state kind");
}

CMatrix thermal_anyon_projector(unsigned m) {
    double s[4];
    for (int i = 0; i < 4; i++) {
        s[i] = ((m >> i) & 1) ? -1.0 : 1.0;
    }
    return stabilizer_product(true, s);
}

CMatrix thermal_vertex_projector(unsigned e) {
    double s[4];
    for (int i = 0; i < 4; i++) {
        s[i] = ((e >> i) & 1) ? -1.0 : 1.0;
    }
    return stabilizer_product(false, s);
}

ThermalChannels thermal_tc_channels(double beta) {
    double p = thermal_p_of_beta(beta);
    std::vector<CMatrix> coarse, reverse;
    double weight[2] = {0, 0};
    for (unsigned m = 0; m < 16; m++) {
        int k = std::popcount(m);
        weight[k % 2] += std::pow(p, k) * std::pow(1 - p, 4 - k);
    }
    CMatrix site1[2] = {site1_projector(0), site1_projector(1)};
    for (unsigned m = 0; m < 16; m++) {
        // U_m is a diagonal sign matrix and its own inverse.
        Eigen::VectorXcd u = fusion_signs(m);
        coarse.push_back(u.asDiagonal() * thermal_anyon_projector(m));
        int k = std::popcount(m);
        double cond = std::pow(p, k) * std::pow(1 - p, 4 - k) / weight[k % 2];
        reverse.push_back(std::sqrt(cond) * (u.asDiagonal() * site1[k % 2]));
    }
    return ThermalChannels{DenseChannel(kTorusQubits, kTorusQubits, std::move(coarse)),
                           DenseChannel(kTorusQubits, kTorusQubits, std::move(reverse))};
}

PetzRecovery petz_recovery(const DenseChannel &ch, const DenseState &reference) {
    if (reference.num_qubits() != ch.in_qubits()) {
        throw std::invalid_argument("reference state does not match the channel input");
    }
    const Eigen::Index dA = dim_of(ch.in_qubits());
    const Eigen::Index dAp = dim_of(ch.out_qubits());
    const auto &K = ch.kraus();
    Eigen::Index dE = static_cast<Eigen::Index>(K.size());
    while ((dAp * dE) % dA != 0) {
        dE++;
    }
    const Eigen::Index dR = dAp * dE / dA;

    // Stinespring isometry A -> A' (x) E, environment least significant.
    CMatrix W = CMatrix::Zero(dAp * dE, dA);
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(K.size()); k++) {
        for (Eigen::Index ap = 0; ap < dAp; ap++) {
            W.row(ap * dE + k) = K[static_cast<size_t>(k)].row(ap);
        }
    }
    CMatrix sigma = W * reference.matrix() * W.adjoint();
    CMatrix sigma_ap = CMatrix::Zero(dAp, dAp);
    for (Eigen::Index i = 0; i < dAp; i++) {
        for (Eigen::Index j = 0; j < dAp; j++) {
            cd s = 0;
            for (Eigen::Index e = 0; e < dE; e++) {
                s += sigma(i * dE + e, j * dE + e);
            }
            sigma_ap(i, j) = s;
        }
    }

    Eigen::SelfAdjointEigenSolver<CMatrix> es(sigma_ap);
    Eigen::VectorXd lam = es.eigenvalues();
    double cut = 1e-10 * lam.maxCoeff();
    bool deficient = false;
    Eigen::VectorXd inv_root(lam.size()), support(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); i++) {
        if (lam(i) > cut) {
            inv_root(i) = 1.0 / std::sqrt(lam(i));
            support(i) = 1.0;
        } else {
            inv_root(i) = 0.0;
            support(i) = 0.0;
            deficient = true;
        }
    }
    const CMatrix &V = es.eigenvectors();
    CMatrix sap_inv_root = V * inv_root.asDiagonal() * V.adjoint();
    CMatrix outside = CMatrix::Identity(dAp, dAp) - V * support.asDiagonal() * V.adjoint();
    CMatrix sigma_root = psd_sqrt(sigma);

    // Kraus operators of the Petz map T: A' -> A' (x) E.
    std::vector<CMatrix> T;
    for (Eigen::Index e = 0; e < dE; e++) {
        CMatrix lift = CMatrix::Zero(dAp * dE, dAp);
        for (Eigen::Index ap = 0; ap < dAp; ap++) {
            lift.row(ap * dE + e) = sap_inv_root.row(ap);
        }
        T.push_back(sigma_root * lift);
    }
    if (deficient) {
        CMatrix lift = CMatrix::Zero(dAp * dE, dAp);
        for (Eigen::Index ap = 0; ap < dAp; ap++) {
            lift.row(ap * dE) = outside.row(ap);
        }
        T.push_back(lift);
    }

    // Unitary completion of W: column (a, r = 0) is W |a>.
    Eigen::HouseholderQR<CMatrix> qr(W);
    CMatrix Q = qr.householderQ();
    CMatrix U(dAp * dE, dA * dR);
    Eigen::Index spare = dA;
    for (Eigen::Index a = 0; a < dA; a++) {
        for (Eigen::Index r = 0; r < dR; r++) {
            U.col(a * dR + r) = r == 0 ? CMatrix(W.col(a)) : CMatrix(Q.col(spare++));
        }
    }

    std::vector<CMatrix> kraus;
    for (const CMatrix &t : T) {
        CMatrix ut = U.adjoint() * t;
        for (Eigen::Index r = 0; r < dR; r++) {
            CMatrix k(dA, dAp);
            for (Eigen::Index a = 0; a < dA; a++) {
                k.row(a) = ut.row(a * dR + r);
            }
            if (k.norm() >= 1e-14) {
                kraus.push_back(std::move(k));
            }
        }
    }
    return PetzRecovery{DenseChannel(ch.out_qubits(), ch.in_qubits(), std::move(kraus)), deficient};
}

PetzRecovery petz_recovery(const DenseChannel &ch, const DenseState &state, const std::vector<int> &targets) {
    return petz_recovery(ch, reduced_state(state, targets));
}

DenseState apply_and_recover(const DenseChannel &ch, const DenseChannel &recovery, const DenseState &state,
                             const std::vector<int> &subsystem) {
    if (recovery.in_qubits() != ch.out_qubits() || recovery.out_qubits() != ch.in_qubits()) {
        throw std::invalid_argument("recovery does not invert the channel's registers");
    }
    int n = state.num_qubits();
    DenseState mid = apply_channel(ch, state, subsystem);
    if (ch.in_qubits() == ch.out_qubits()) {
        return apply_channel(recovery, mid, subsystem);
    }
    int lowest = *std::min_element(subsystem.begin(), subsystem.end());
    int before = 0;
    for (int q = 0; q < lowest; q++) {
        before += std::find(subsystem.begin(), subsystem.end(), q) == subsystem.end() ? 1 : 0;
    }
    std::vector<int> outputs;
    for (int k = 0; k < ch.out_qubits(); k++) {
        outputs.push_back(before + k);
    }
    DenseState back = apply_channel(recovery, mid, outputs);
    // Layout now: `before` others, the subsystem in the given order, the
    // remaining others. Map it back to the original numbering.
    std::vector<int> layout;
    std::vector<int> others;
    for (int q = 0; q < n; q++) {
        if (std::find(subsystem.begin(), subsystem.end(), q) == subsystem.end()) {
            others.push_back(q);
        }
    }
    layout.insert(layout.end(), others.begin(), others.begin() + before);
    layout.insert(layout.end(), subsystem.begin(), subsystem.end());
    layout.insert(layout.end(), others.begin() + before, others.end());
    std::vector<int> order(static_cast<size_t>(n));
    for (int pos = 0; pos < n; pos++) {
        order[static_cast<size_t>(layout[static_cast<size_t>(pos)])] = pos;
    }
    return DenseState(permute_qubits(back.matrix(), n, order), n);
}

RecoveryReport correlation_preserving_test(const DenseChannel &ch, const DenseState &state,
                                           const std::vector<int> &subsystem) {
    RecoveryReport rep;
    rep.mi_before = mutual_information(state, subsystem);
    DenseState mid = apply_channel(ch, state, subsystem);
    std::vector<int> outputs;
    if (ch.in_qubits() == ch.out_qubits()) {
        outputs = subsystem;
    } else {
        int lowest = *std::min_element(subsystem.begin(), subsystem.end());
        int before = 0;
        for (int q = 0; q < lowest; q++) {
            before += std::find(subsystem.begin(), subsystem.end(), q) == subsystem.end() ? 1 : 0;
        }
        for (int k = 0; k < ch.out_qubits(); k++) {
            outputs.push_back(before + k);
        }
    }
    rep.mi_after = mutual_information(mid, outputs);
    rep.epsilon = rep.mi_before - rep.mi_after;
    PetzRecovery petz = petz_recovery(ch, state, subsystem);
    rep.rank_deficient = petz.rank_deficient;
    DenseState back = apply_and_recover(ch, petz.channel, state, subsystem);
    rep.fidelity = fidelity(state.matrix(), back.matrix());
    rep.bound = std::exp2(-rep.epsilon / 2);
    if (rep.epsilon <= 1e-9 && rep.fidelity < 1 - 1e-9) {
        throw std::logic_error("zero mutual-information loss but Petz recovery fidelity " +
                               std::to_string(rep.fidelity));
    }
    return rep;
}

}  // namespace mixrg
