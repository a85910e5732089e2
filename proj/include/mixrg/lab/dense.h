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

#ifndef MIXRG_LAB_DENSE_H
#define MIXRG_LAB_DENSE_H

#include <Eigen/Dense>
#include <vector>

namespace mixrg {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Largest register the dense lab accepts.
constexpr int kMaxDenseQubits = 12;

/// Density matrix on n qubits. Qubit 0 is the most significant bit of the
/// computational basis index.
class DenseState {
   public:
    /// Validates dimension, Hermiticity (1e-12), unit trace (1e-12) and
    /// positivity (min eigenvalue >= -1e-10); throws std::invalid_argument.
    DenseState(CMatrix rho, int num_qubits);

    static DenseState pure(const CVector &psi);
    static DenseState maximally_mixed(int num_qubits);

    int num_qubits() const {
        return n_;
    }
    Eigen::Index dim() const {
        return rho_.rows();
    }
    const CMatrix &matrix() const {
        return rho_;
    }

   private:
    CMatrix rho_;
    int n_;
};

/// Channel given by Kraus operators mapping in_qubits to out_qubits.
class DenseChannel {
   public:
    /// Throws std::invalid_argument on a dimension mismatch or if
    /// sum K^dag K differs from the identity by more than 1e-10.
    DenseChannel(int in_qubits, int out_qubits, std::vector<CMatrix> kraus);

    static DenseChannel identity(int num_qubits);
    static DenseChannel unitary(const CMatrix &u);

    int in_qubits() const {
        return in_;
    }
    int out_qubits() const {
        return out_;
    }
    const std::vector<CMatrix> &kraus() const {
        return kraus_;
    }
    /// max |sum K^dag K - I|.
    double completeness_error() const;

   private:
    int in_;
    int out_;
    std::vector<CMatrix> kraus_;
};

/// Reorders qubits: qubit j of the result is qubit order[j] of the input.
CMatrix permute_qubits(const CMatrix &m, int num_qubits, const std::vector<int> &order);

/// Reduced matrix on `keep` (in the given order).
CMatrix partial_trace(const CMatrix &m, int num_qubits, const std::vector<int> &keep);
DenseState reduced_state(const DenseState &state, const std::vector<int> &keep);

CMatrix kron(const CMatrix &a, const CMatrix &b);

/// Von Neumann entropy in bits; eigenvalues below 1e-12 count as zero.
double entropy_bits(const CMatrix &rho);

/// I(A:B) = S_A + S_B - S_AB in bits, B the complement of `subsystem`.
double mutual_information(const DenseState &state, const std::vector<int> &subsystem);

/// Applies `ch` to the listed target qubits. When the channel preserves the
/// qubit count the outputs replace the targets in place; otherwise the
/// outputs are inserted, in order, where the smallest target was (after
/// removing all targets).
DenseState apply_channel(const DenseChannel &ch, const DenseState &state, const std::vector<int> &targets);
/// The same on an arbitrary operator, without state validation.
CMatrix apply_channel_to_operator(const DenseChannel &ch, const CMatrix &op, int num_qubits,
                                  const std::vector<int> &targets);

/// second o first, pruning Kraus products of Frobenius norm < 1e-14.
DenseChannel compose(const DenseChannel &second, const DenseChannel &first);
/// first (x) second on disjoint registers, first on the high qubits.
DenseChannel tensor(const DenseChannel &first, const DenseChannel &second);

/// Transfer matrix sum_k K (x) conj(K), acting on row-major vectorized
/// operators.
CMatrix superoperator(const DenseChannel &ch);
/// Largest entry-wise difference of the transfer matrices, i.e. the largest
/// output difference over all matrix units |i><j|.
double superoperator_distance(const DenseChannel &a, const DenseChannel &b);

/// Root fidelity ||sqrt(sigma) sqrt(rho)||_1.
double fidelity(const CMatrix &sigma, const CMatrix &rho);
/// (1/2) ||rho - sigma||_1.
double trace_distance(const CMatrix &rho, const CMatrix &sigma);

/// Positive semidefinite square root (negative eigenvalues clamped to 0).
CMatrix psd_sqrt(const CMatrix &m);

}  // namespace mixrg

#endif
