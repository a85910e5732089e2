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

#ifndef MIXRG_FLOW_FLOWMAPS_H
#define MIXRG_FLOW_FLOWMAPS_H

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mixrg {

enum class FlowKind { GhzX, GhzZ, ThermalP, ThermalBeta, SptXX };

std::string_view flow_kind_name(FlowKind kind);
/// Accepts "ghz-x", "ghz-z", "thermal-p", "thermal-beta", "spt-xx".
FlowKind parse_flow_kind(std::string_view name);

/// Majority-vote recursion for bit-flip noise on a GHZ state: probability
/// that more than half of b independent flips occur.
double ghz_x_step(double p, int b);
/// Phase-flip recursion p' = (1 - (1 - 2p)^b) / 2.
double ghz_z_step(double p, int b);
/// Thermal toric code recursion p' = 4p(1-p)^3 + 4p^3(1-p), for p in [0, 1/2].
double thermal_p_step(double p);
/// Inverse-temperature recursion tanh(beta') = tanh(beta)^4.
double thermal_beta_step(double beta);
/// Cluster-state (SPT) recursion. Same binomial tail as ghz_x_step.
double spt_step(double p, int b);

/// Excitation probability at inverse temperature beta: e^-b / (e^b + e^-b).
double thermal_p_of_beta(double beta);
/// Inverse of thermal_p_of_beta on [0, 1/2].
double thermal_beta_of_p(double p);

/// A one-parameter RG recursion with its block size.
struct FlowMap {
    FlowKind kind = FlowKind::GhzX;
    /// Odd block size (>= 3); ignored by the thermal maps (2 x 2 blocks).
    int block = 3;

    /// Throws std::invalid_argument for an even or too small block.
    void validate() const;
    double operator()(double x) const;
    /// The same formula without domain checks; for finite differences that
    /// step slightly outside the domain.
    double evaluate_unchecked(double x) const;
    /// Linear size reduction per step: b, or 2 for the thermal maps.
    int coarse_factor() const;
    double domain_lo() const {
        return 0.0;
    }
    /// 1/2 for probability maps; an arbitrary finite cap for beta.
    double domain_hi() const;
};

struct FlowTrajectory {
    std::vector<double> values;
    /// Renormalized linear size at each level (L / factor^level).
    std::vector<double> sizes;
};

FlowTrajectory flow_trajectory(const FlowMap &map, double x0, double L, int levels);

struct FixedPoint {
    double x = 0;
    double slope = 0;
    bool stable = false;
};

class BisectionError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Fixed points of `map` on [domain_lo, domain_hi], found by scanning a grid
/// of `grid` intervals for exact zeros and sign changes of map(x) - x, then
/// bisecting to 1e-12. Slopes use a central difference with step 1e-6;
/// stable means |slope| < 1.
std::vector<FixedPoint> classify_fixed_points(const FlowMap &map, int grid = 1000);

enum class FidelityKind { GhzXVsPure, GhzZVsClassical, ThermalLowerBound, AnyonDensityBound };

std::string_view fidelity_kind_name(FidelityKind kind);
FidelityKind parse_fidelity_kind(std::string_view name);

/// Closed-form fidelities and bounds.
///
/// GhzXVsPure(p, L) = (1-p)^L + p^L; GhzZVsClassical(p, L) = 1/2 + 1/2
/// sqrt(1 - (1-2p)^(2L)); ThermalLowerBound(beta, L) = 2^(-beta L^2 - 1);
/// AnyonDensityBound(q, L) = 1 - L^2 q. The first two are the squared root
/// fidelity, i.e. the overlap with the reference state.
double fidelity_formula(FidelityKind kind, double x, double L);

/// The fidelity reported alongside a trajectory of `kind`. Thermal maps
/// report the lower bound.
double trajectory_fidelity(FlowKind kind, double x, double L);

class NotConvergedError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Smallest level whose fidelity with the fixed-point state reaches
/// 1 - epsilon. Supports ghz-x, spt-xx and ghz-z (the maps with exact
/// fidelity expressions). Throws NotConvergedError if x0 lies outside the
/// basin of the stable point ([0, 1/2) for bit flips, (0, 1) for phase
/// flips), or if the size drops below one site or max_levels is exceeded
/// first.
int steps_to_converge(const FlowMap &map, double x0, double L, double epsilon, int max_levels = 64);

}  // namespace mixrg

#endif
