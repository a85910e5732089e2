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

#include "mixrg/lab/dense.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mixrg {

namespace {

Eigen::Index dim_of(int n) {
    return Eigen::Index{1} << n;
}

void check_qubits(int n) {
    if (n < 0 || n > kMaxDenseQubits) {
        throw std::invalid_argument("dense register must have 0.." + std::to_string(kMaxDenseQubits) +
                                    " qubits, got " + std::to_string(n));
    }
}

void check_targets(const std::vector<int> &targets, int n) {
    std::vector<bool> seen(static_cast<size_t>(n), false);
    for (int t : targets) {
        if (t < 0 || t >= n) {
            throw std::invalid_argument("qubit index " + std::to_string(t) + " out of range");
        }
        if (seen[static_cast<size_t>(t)]) {
            throw std::invalid_argument("duplicate qubit index " + std::to_string(t));
        }
        seen[static_cast<size_t>(t)] = true;
    }
}

std::vector<int> complement(const std::vector<int> &subset, int n) {
    std::vector<int> out;
    for (int q = 0; q < n; q++) {
        if (std::find(subset.begin(), subset.end(), q) == subset.end()) {
            out.push_back(q);
        }
    }
    return out;
}

// Maps each new basis index to the old one for permute_qubits.
std::vector<Eigen::Index> index_map(int n, const std::vector<int> &order) {
    Eigen::Index d = dim_of(n);
    std::vector<Eigen::Index> map(static_cast<size_t>(d));
    for (Eigen::Index i = 0; i < d; i++) {
        Eigen::Index old = 0;
        for (int j = 0; j < n; j++) {
            Eigen::Index bit = (i >> (n - 1 - j)) & 1;
            old |= bit << (n - 1 - order[static_cast<size_t>(j)]);
        }
        map[static_cast<size_t>(i)] = old;
    }
    return map;
}

Eigen::VectorXd hermitian_eigenvalues(const CMatrix &m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

}  // namespace

DenseState::DenseState(CMatrix rho, int num_qubits) : n_(num_qubits) {
    check_qubits(num_qubits);
    if (rho.rows() != dim_of(num_qubits) || rho.cols() != dim_of(num_qubits)) {
        throw std::invalid_argument("density matrix dimension does not match 2^" + std::to_string(num_qubits));
    }
    double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12) {
        throw std::invalid_argument("density matrix not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    std::complex<double> tr = rho.trace();
    if (std::abs(tr - 1.0) > 1e-12) {
        throw std::invalid_argument("density matrix trace " + std::to_string(tr.real()) + " differs from 1");
    }
    rho_ = (rho + rho.adjoint()) * 0.5;
    double lo = hermitian_eigenvalues(rho_).minCoeff();
    if (lo < -1e-10) {
        throw std::invalid_argument("density matrix not positive (min eigenvalue " + std::to_string(lo) + ")");
    }
}

DenseState DenseState::pure(const CVector &psi) {
    int n = 0;
    while (dim_of(n) < psi.size()) {
        n++;
    }
    if (dim_of(n) != psi.size()) {
        throw std::invalid_argument("state vector length is not a power of two");
    }
    CVector v = psi / psi.norm();
    return DenseState(v * v.adjoint(), n);
}

DenseState DenseState::maximally_mixed(int num_qubits) {
    check_qubits(num_qubits);
    Eigen::Index d = dim_of(num_qubits);
    return DenseState(CMatrix::Identity(d, d) / static_cast<double>(d), num_qubits);
}

DenseChannel::DenseChannel(int in_qubits, int out_qubits, std::vector<CMatrix> kraus)
    : in_(in_qubits), out_(out_qubits), kraus_(std::move(kraus)) {
    check_qubits(in_qubits);
    check_qubits(out_qubits);
    if (kraus_.empty()) {
        throw std::invalid_argument("channel needs at least one Kraus operator");
    }
    for (const CMatrix &k : kraus_) {
        if (k.rows() != dim_of(out_) || k.cols() != dim_of(in_)) {
            throw std::invalid_argument("Kraus operator has the wrong shape");
        }
    }
    double err = completeness_error();
    if (err > 1e-10) {
        throw std::invalid_argument("Kraus operators not trace preserving (deviation " + std::to_string(err) + ")");
    }
}

DenseChannel DenseChannel::identity(int num_qubits) {
    check_qubits(num_qubits);
    Eigen::Index d = dim_of(num_qubits);
    return DenseChannel(num_qubits, num_qubits, {CMatrix::Identity(d, d)});
}

DenseChannel DenseChannel::unitary(const CMatrix &u) {
    int n = 0;
    while (dim_of(n) < u.rows()) {
        n++;
    }
    return DenseChannel(n, n, {u});
}

double DenseChannel::completeness_error() const {
    Eigen::Index d = dim_of(in_);
    CMatrix sum = CMatrix::Zero(d, d);
    for (const CMatrix &k : kraus_) {
        sum.noalias() += k.adjoint() * k;
    }
    return (sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

CMatrix permute_qubits(const CMatrix &m, int num_qubits, const std::vector<int> &order) {
    if (static_cast<int>(order.size()) != num_qubits) {
        throw std::invalid_argument("permutation length mismatch");
    }
    check_targets(order, num_qubits);
    std::vector<Eigen::Index> map = index_map(num_qubits, order);
    Eigen::Index d = m.rows();
    CMatrix out(d, d);
    for (Eigen::Index j = 0; j < d; j++) {
        Eigen::Index oj = map[static_cast<size_t>(j)];
        for (Eigen::Index i = 0; i < d; i++) {
            out(i, j) = m(map[static_cast<size_t>(i)], oj);
        }
    }
    return out;
}

CMatrix partial_trace(const CMatrix &m, int num_qubits, const std::vector<int> &keep) {
    check_targets(keep, num_qubits);
    std::vector<int> order = keep;
    std::vector<int> rest = complement(keep, num_qubits);
    order.insert(order.end(), rest.begin(), rest.end());
    CMatrix p = permute_qubits(m, num_qubits, order);
    Eigen::Index dk = dim_of(static_cast<int>(keep.size()));
    Eigen::Index dt = dim_of(static_cast<int>(rest.size()));
    CMatrix out = CMatrix::Zero(dk, dk);
    for (Eigen::Index i = 0; i < dk; i++) {
        for (Eigen::Index j = 0; j < dk; j++) {
            std::complex<double> s = 0;
            for (Eigen::Index t = 0; t < dt; t++) {
                s += p(i * dt + t, j * dt + t);
            }
            out(i, j) = s;
        }
    }
    return out;
}

DenseState reduced_state(const DenseState &state, const std::vector<int> &keep) {
    return DenseState(partial_trace(state.matrix(), state.num_qubits(), keep), static_cast<int>(keep.size()));
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double entropy_bits(const CMatrix &rho) {
    Eigen::VectorXd ev = hermitian_eigenvalues(rho);
    double s = 0;
    for (double l : ev) {
        if (l > 1e-12) {
            s -= l * std::log2(l);
        }
    }
    return s;
}

double mutual_information(const DenseState &state, const std::vector<int> &subsystem) {
    int n = state.num_qubits();
    check_targets(subsystem, n);
    std::vector<int> rest = complement(subsystem, n);
    double sa = entropy_bits(partial_trace(state.matrix(), n, subsystem));
    double sb = entropy_bits(partial_trace(state.matrix(), n, rest));
    double sab = entropy_bits(state.matrix());
    return sa + sb - sab;
}

CMatrix apply_channel_to_operator(const DenseChannel &ch, const CMatrix &op, int num_qubits,
                                  const std::vector<int> &targets) {
    check_targets(targets, num_qubits);
    if (static_cast<int>(targets.size()) != ch.in_qubits()) {
        throw std::invalid_argument("channel expects " + std::to_string(ch.in_qubits()) + " qubits, got " +
                                    std::to_string(targets.size()) + " targets");
    }
    int n_out_total = num_qubits - ch.in_qubits() + ch.out_qubits();
    check_qubits(n_out_total);

    // Targets last, so each (r, r') block of the matrix is a target-space
    // operator.
    std::vector<int> others = complement(targets, num_qubits);
    std::vector<int> order = others;
    order.insert(order.end(), targets.begin(), targets.end());
    CMatrix p = permute_qubits(op, num_qubits, order);

    Eigen::Index dr = dim_of(static_cast<int>(others.size()));
    Eigen::Index di = dim_of(ch.in_qubits());
    Eigen::Index dout = dim_of(ch.out_qubits());
    CMatrix out = CMatrix::Zero(dr * dout, dr * dout);
    for (const CMatrix &k : ch.kraus()) {
        if (k.cwiseAbs().maxCoeff() == 0.0) {
            continue;
        }
        CMatrix kd = k.adjoint();
        for (Eigen::Index r = 0; r < dr; r++) {
            for (Eigen::Index s = 0; s < dr; s++) {
                out.block(r * dout, s * dout, dout, dout).noalias() += k * p.block(r * di, s * di, di, di) * kd;
            }
        }
    }

    // Current layout: others (ascending), then outputs. Build the final one.
    int n_others = static_cast<int>(others.size());
    std::vector<int> final_order(static_cast<size_t>(n_out_total), -1);
    if (ch.in_qubits() == ch.out_qubits()) {
        for (size_t k = 0; k < targets.size(); k++) {
            final_order[static_cast<size_t>(targets[k])] = n_others + static_cast<int>(k);
        }
        size_t next = 0;
        for (int &slot : final_order) {
            if (slot < 0) {
                slot = static_cast<int>(next++);
            }
        }
    } else {
        int lowest = targets.empty() ? num_qubits : *std::min_element(targets.begin(), targets.end());
        int insert_at = static_cast<int>(std::count_if(others.begin(), others.end(), [&](int q) {
            return q < lowest;
        }));
        int pos = 0;
        for (int k = 0; k < insert_at; k++) {
            final_order[static_cast<size_t>(pos++)] = k;
        }
        for (int k = 0; k < ch.out_qubits(); k++) {
            final_order[static_cast<size_t>(pos++)] = n_others + k;
        }
        for (int k = insert_at; k < n_others; k++) {
            final_order[static_cast<size_t>(pos++)] = k;
        }
    }
    return permute_qubits(out, n_out_total, final_order);
}

DenseState apply_channel(const DenseChannel &ch, const DenseState &state, const std::vector<int> &targets) {
    CMatrix out = apply_channel_to_operator(ch, state.matrix(), state.num_qubits(), targets);
    int n = state.num_qubits() - ch.in_qubits() + ch.out_qubits();
    // Round-off from long Kraus lists can leave a tiny anti-Hermitian part.
    out = (out + out.adjoint()).eval() * 0.5;
    return DenseState(std::move(out), n);
}

DenseChannel compose(const DenseChannel &second, const DenseChannel &first) {
    if (second.in_qubits() != first.out_qubits()) {
        throw std::invalid_argument("cannot compose: output and input registers differ");
    }
    std::vector<CMatrix> kraus;
    for (const CMatrix &a : second.kraus()) {
        for (const CMatrix &b : first.kraus()) {
            CMatrix k = a * b;
            if (k.norm() >= 1e-14) {
                kraus.push_back(std::move(k));
            }
        }
    }
    if (kraus.empty()) {
        throw std::invalid_argument("composition has no surviving Kraus operators");
    }
    return DenseChannel(first.in_qubits(), second.out_qubits(), std::move(kraus));
}

DenseChannel tensor(const DenseChannel &first, const DenseChannel &second) {
    std::vector<CMatrix> kraus;
    for (const CMatrix &a : first.kraus()) {
        for (const CMatrix &b : second.kraus()) {
            CMatrix k = kron(a, b);
            if (k.norm() >= 1e-14) {
                kraus.push_back(std::move(k));
            }
        }
    }
    return DenseChannel(first.in_qubits() + second.in_qubits(), first.out_qubits() + second.out_qubits(),
                        std::move(kraus));
}

CMatrix superoperator(const DenseChannel &ch) {
    Eigen::Index dout = dim_of(ch.out_qubits());
    Eigen::Index din = dim_of(ch.in_qubits());
    CMatrix s = CMatrix::Zero(dout * dout, din * din);
    for (const CMatrix &k : ch.kraus()) {
        s += kron(k, k.conjugate());
    }
    return s;
}

double superoperator_distance(const DenseChannel &a, const DenseChannel &b) {
    if (a.in_qubits() != b.in_qubits() || a.out_qubits() != b.out_qubits()) {
        throw std::invalid_argument("channels act on different registers");
    }
    return (superoperator(a) - superoperator(b)).cwiseAbs().maxCoeff();
}

CMatrix psd_sqrt(const CMatrix &m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const CMatrix &sigma, const CMatrix &rho) {
    if (sigma.rows() != rho.rows()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    // Eigenvalues below a relative 1e-14 are round-off on the kernel; their
    // square roots (~1e-8) would otherwise swamp the answer.
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sigma);
    Eigen::VectorXd ev = es.eigenvalues();
    double cut = 1e-14 * std::max(ev.maxCoeff(), 0.0);
    for (Eigen::Index i = 0; i < ev.size(); i++) {
        ev(i) = ev(i) > cut ? std::sqrt(ev(i)) : 0.0;
    }
    CMatrix root = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    CMatrix m = root * rho * root;
    m = (m + m.adjoint()).eval() * 0.5;
    Eigen::VectorXd mv = hermitian_eigenvalues(m);
    double mcut = 1e-14 * std::max(mv.maxCoeff(), 0.0);
    double f = 0;
    for (double l : mv) {
        if (l > mcut) {
            f += std::sqrt(l);
        }
    }
    return f;
}

double trace_distance(const CMatrix &rho, const CMatrix &sigma) {
    if (sigma.rows() != rho.rows()) {
        throw std::invalid_argument("trace distance: dimension mismatch");
    }
    CMatrix d = rho - sigma;
    d = (d + d.adjoint()).eval() * 0.5;
    return 0.5 * hermitian_eigenvalues(d).cwiseAbs().sum();
}

}  // namespace mixrg
