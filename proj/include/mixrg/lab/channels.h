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

#ifndef MIXRG_LAB_CHANNELS_H
#define MIXRG_LAB_CHANNELS_H

#include <string_view>
#include <utility>

#include "mixrg/lab/dense.h"

namespace mixrg {

/// Single-qubit X dephasing: (1-p) rho + p X rho X.
DenseChannel x_dephasing(double p);
/// Single-qubit Z dephasing: (1-p) rho + p Z rho Z.
DenseChannel z_dephasing(double p);
/// Two-qubit correlated flip: (1-p) rho + p XX rho XX.
DenseChannel xx_dephasing(double p);
/// rho -> tr(rho) |0><0| on one qubit.
DenseChannel reset_channel();
/// Traces out the last `traced` of `total` qubits.
DenseChannel partial_trace_channel(int total, int traced);
/// Isometric embedding |0> -> |0...0>, |1> -> |1...1> onto b qubits.
DenseChannel repetition_encoding(int b);
/// Channel applying `single` to each of n qubits.
DenseChannel tensor_power(const DenseChannel &single, int n);

/// Majority vote on b qubits: one Kraus operator per pairwise-difference
/// string d, K_d = sum over s with diff(s) = d of |maj(s)><s|.
DenseChannel majority_vote_channel(int b);

enum class StateKind { GhzX, GhzZ, Thermal, Spt };

std::string_view state_kind_name(StateKind kind);
StateKind parse_state_kind(std::string_view name);

/// Exact dense states.
///
/// GhzX: X dephasing at strength `param` on every qubit of |GHZ_L>.
/// GhzZ: the closed form with off-diagonal weight (1-2p)^L / 2.
/// Thermal: toric code Gibbs state at inverse temperature `param` on the
/// L = 2 torus (8 qubits).
/// Spt: a periodic chain of L two-qubit sites holding Bell pairs between
/// neighbouring sites, with XX dephasing at strength `param` on every site.
DenseState build_state(StateKind kind, double param, int L);

DenseState ghz_pure(int n);
DenseState bell_pair();

/// Coarse-graining channels of the thermal toric code on the 2 x 2 torus.
struct ThermalChannels {
    /// Measures the m-anyon pattern and pushes the anyons to plaquette 1.
    DenseChannel coarse;
    /// Re-samples the pattern from Pr(m | parity) at the given temperature.
    DenseChannel reverse;
};

/// Qubit numbering on the 2 x 2 torus: north edge (r, c) is qubit 2r + c,
/// west edge (r, c) is qubit 4 + 2r + c. Plaquettes 1..4 are (0,0), (0,1),
/// (1,0), (1,1).
ThermalChannels thermal_tc_channels(double beta);
/// Projector onto the m-anyon pattern m (bit i-1 is plaquette i).
CMatrix thermal_anyon_projector(unsigned m);
/// Projector onto an e-anyon (vertex) pattern.
CMatrix thermal_vertex_projector(unsigned e);

struct PetzRecovery {
    DenseChannel channel;
    /// Set when the channel output's reference state is singular and the
    /// pseudo-inverse was used.
    bool rank_deficient = false;
};

/// Petz recovery of `ch` with respect to the reference state `reference`
/// (the input marginal). Built from a Stinespring dilation W = sum_k K_k (x)
/// |k>: sigma = W rho W^dag, T is the Petz map of tr_E for sigma, and the
/// result is tr_R U^dag T where U is a unitary completion of W.
PetzRecovery petz_recovery(const DenseChannel &ch, const DenseState &reference);
/// Same, with the reference taken as the marginal of `state` on `targets`.
PetzRecovery petz_recovery(const DenseChannel &ch, const DenseState &state, const std::vector<int> &targets);

struct RecoveryReport {
    double mi_before = 0;
    double mi_after = 0;
    /// Mutual-information deficit I_A:B(rho) - I_A':B(E(rho)).
    double epsilon = 0;
    /// F(rho, D o E(rho)) with D the Petz recovery.
    double fidelity = 0;
    /// 2^(-epsilon/2), reported for reference only.
    double bound = 0;
    bool rank_deficient = false;
};

/// Applies `ch` to subsystem A (the listed qubits), measures the mutual
/// information deficit, recovers with the Petz map and reports the fidelity.
/// Throws std::logic_error if epsilon <= 1e-9 but the recovery fidelity is
/// below 1 - 1e-9.
RecoveryReport correlation_preserving_test(const DenseChannel &ch, const DenseState &state,
                                           const std::vector<int> &subsystem);

/// Applies `ch` to `subsystem`, then `recovery` to the outputs, and returns
/// the state with the original qubit order restored.
DenseState apply_and_recover(const DenseChannel &ch, const DenseChannel &recovery, const DenseState &state,
                             const std::vector<int> &subsystem);

}  // namespace mixrg

#endif
