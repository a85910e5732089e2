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

#include "mixrg/flow/flowmaps.h"

#include <cmath>
#include <limits>

namespace mixrg {

namespace {

void check_block(int b) {
    if (b < 3 || b % 2 == 0) {
        throw std::invalid_argument("block size must be an odd integer >= 3, got " + std::to_string(b));
    }
}

void check_unit(double p, const char *what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " + std::to_string(p));
    }
}

double binomial(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; i++) {
        c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return c;
}

// Sum over k > b/2 of C(b,k) p^k (1-p)^(b-k), smallest term first when
// p <= 1/2. Valid as a polynomial for any real p.
double upper_tail(double p, int b) {
    double q = 1.0 - p;
    double total = 0.0;
    for (int k = b; k >= (b + 1) / 2; k--) {
        total += binomial(b, k) * std::pow(p, k) * std::pow(q, b - k);
    }
    return total;
}

double thermal_quartic(double p) {
    double q = 1.0 - p;
    return 4.0 * p * q * q * q + 4.0 * p * p * p * q;
}

double beta_map(double beta) {
    double t = std::tanh(beta);
    double t2 = t * t;
    return std::atanh(t2 * t2);
}

}  // namespace

std::string_view flow_kind_name(FlowKind kind) {
    switch (kind) {
        case FlowKind::GhzX:
            return "ghz-x";
        case FlowKind::GhzZ:
            return "ghz-z";
        case FlowKind::ThermalP:
            return "thermal-p";
        case FlowKind::ThermalBeta:
            return "thermal-beta";
        case FlowKind::SptXX:
            return "spt-xx";
    }
    throw std::invalid_argument("unknown flow kind");
}

FlowKind parse_flow_kind(std::string_view name) {
    for (FlowKind k : {FlowKind::GhzX, FlowKind::GhzZ, FlowKind::ThermalP, FlowKind::ThermalBeta, FlowKind::SptXX}) {
        if (flow_kind_name(k) == name) {
            return k;
        }
    }
    throw std::invalid_argument("unknown flow kind '" + std::string(name) +
                                "' (expected ghz-x, ghz-z, thermal-p, thermal-beta or spt-xx)");
}

double ghz_x_step(double p, int b) {
    check_block(b);
    check_unit(p, "p");
    if (p <= 0.5) {
        return upper_tail(p, b);
    }
    return 1.0 - upper_tail(1.0 - p, b);
}

double ghz_z_step(double p, int b) {
    check_block(b);
    check_unit(p, "p");
    if (p < 0.5) {
        // -expm1 keeps full relative precision for small p.
        return -0.5 * std::expm1(static_cast<double>(b) * std::log1p(-2.0 * p));
    }
    return 0.5 * (1.0 - std::pow(1.0 - 2.0 * p, b));
}

double thermal_p_step(double p) {
    if (!(p >= 0.0 && p <= 0.5)) {
        throw std::invalid_argument("thermal p must lie in [0, 1/2], got " + std::to_string(p));
    }
    return thermal_quartic(p);
}

double thermal_beta_step(double beta) {
    if (!(beta >= 0.0)) {
        throw std::invalid_argument("beta must be non-negative, got " + std::to_string(beta));
    }
    return beta_map(beta);
}

double spt_step(double p, int b) {
    return ghz_x_step(p, b);
}

double thermal_p_of_beta(double beta) {
    if (!(beta >= 0.0)) {
        throw std::invalid_argument("beta must be non-negative, got " + std::to_string(beta));
    }
    return 1.0 / (1.0 + std::exp(2.0 * beta));
}

double thermal_beta_of_p(double p) {
    if (!(p >= 0.0 && p <= 0.5)) {
        throw std::invalid_argument("thermal p must lie in [0, 1/2], got " + std::to_string(p));
    }
    if (p == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 0.5 * std::log((1.0 - p) / p);
}

void FlowMap::validate() const {
    if (kind != FlowKind::ThermalP && kind != FlowKind::ThermalBeta) {
        check_block(block);
    }
}

double FlowMap::operator()(double x) const {
    switch (kind) {
        case FlowKind::GhzX:
            return ghz_x_step(x, block);
        case FlowKind::GhzZ:
            return ghz_z_step(x, block);
        case FlowKind::ThermalP:
            return thermal_p_step(x);
        case FlowKind::ThermalBeta:
            return thermal_beta_step(x);
        case FlowKind::SptXX:
            return spt_step(x, block);
    }
    throw std::invalid_argument("unknown flow kind");
}

double FlowMap::evaluate_unchecked(double x) const {
    switch (kind) {
        case FlowKind::GhzX:
        case FlowKind::SptXX:
            return upper_tail(x, block);
        case FlowKind::GhzZ:
            return 0.5 * (1.0 - std::pow(1.0 - 2.0 * x, block));
        case FlowKind::ThermalP:
            return thermal_quartic(x);
        case FlowKind::ThermalBeta:
            return beta_map(x);
    }
    throw std::invalid_argument("unknown flow kind");
}

int FlowMap::coarse_factor() const {
    return (kind == FlowKind::ThermalP || kind == FlowKind::ThermalBeta) ? 2 : block;
}

double FlowMap::domain_hi() const {
    return kind == FlowKind::ThermalBeta ? 10.0 : 0.5;
}

FlowTrajectory flow_trajectory(const FlowMap &map, double x0, double L, int levels) {
    map.validate();
    if (levels < 0) {
        throw std::invalid_argument("levels must be non-negative");
    }
    FlowTrajectory t;
    double x = x0;
    double size = L;
    for (int l = 0; l <= levels; l++) {
        t.values.push_back(x);
        t.sizes.push_back(size);
        if (l < levels) {
            x = map(x);
            size /= map.coarse_factor();
        }
    }
    return t;
}

std::vector<FixedPoint> classify_fixed_points(const FlowMap &map, int grid) {
    map.validate();
    if (grid < 2) {
        throw std::invalid_argument("grid must have at least 2 intervals");
    }
    const double lo = map.domain_lo();
    const double hi = map.domain_hi();
    auto g = [&](double x) {
        return map.evaluate_unchecked(x) - x;
    };
    auto is_zero = [](double v) {
        return std::abs(v) <= 1e-15;
    };

    std::vector<double> roots;
    double prev_x = lo;
    double prev_g = g(lo);
    if (is_zero(prev_g)) {
        roots.push_back(lo);
    }
    for (int i = 1; i <= grid; i++) {
        double x = lo + (hi - lo) * static_cast<double>(i) / grid;
        double gx = g(x);
        if (is_zero(gx)) {
            roots.push_back(x);
        } else if (!is_zero(prev_g) && (gx > 0) != (prev_g > 0)) {
            double a = prev_x, b = x;
            double ga = prev_g;
            int iter = 0;
            while (b - a > 1e-12) {
                if (++iter > 200) {
                    throw BisectionError("bisection failed to converge near x = " + std::to_string(a));
                }
                double m = 0.5 * (a + b);
                double gm = g(m);
                if (is_zero(gm)) {
                    a = b = m;
                    break;
                }
                if ((gm > 0) == (ga > 0)) {
                    a = m;
                    ga = gm;
                } else {
                    b = m;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        prev_x = x;
        prev_g = gx;
    }

    std::vector<FixedPoint> out;
    const double h = 1e-6;
    for (double r : roots) {
        FixedPoint fp;
        fp.x = r;
        fp.slope = (map.evaluate_unchecked(r + h) - map.evaluate_unchecked(r - h)) / (2 * h);
        fp.stable = std::abs(fp.slope) < 1.0;
        out.push_back(fp);
    }
    return out;
}

std::string_view fidelity_kind_name(FidelityKind kind) {
    switch (kind) {
        case FidelityKind::GhzXVsPure:
            return "ghz-x-vs-pure";
        case FidelityKind::GhzZVsClassical:
            return "ghz-z-vs-classical";
        case FidelityKind::ThermalLowerBound:
            return "thermal-lower-bound";
        case FidelityKind::AnyonDensityBound:
            return "anyon-density-bound";
    }
    throw std::invalid_argument("unknown fidelity kind");
}

FidelityKind parse_fidelity_kind(std::string_view name) {
    for (FidelityKind k : {FidelityKind::GhzXVsPure, FidelityKind::GhzZVsClassical, FidelityKind::ThermalLowerBound,
                           FidelityKind::AnyonDensityBound}) {
        if (fidelity_kind_name(k) == name) {
            return k;
        }
    }
    throw std::invalid_argument("unknown fidelity kind '" + std::string(name) + "'");
}

double fidelity_formula(FidelityKind kind, double x, double L) {
    if (!(L > 0.0) || std::isinf(L)) {
        throw std::invalid_argument("size must be positive and finite, got " + std::to_string(L));
    }
    switch (kind) {
        case FidelityKind::GhzXVsPure:
            check_unit(x, "p");
            return std::pow(1.0 - x, L) + std::pow(x, L);
        case FidelityKind::GhzZVsClassical: {
            check_unit(x, "p");
            double c = std::pow(std::abs(1.0 - 2.0 * x), 2.0 * L);
            return 0.5 + 0.5 * std::sqrt(1.0 - c);
        }
        case FidelityKind::ThermalLowerBound:
            if (!(x >= 0.0)) {
                throw std::invalid_argument("beta must be non-negative");
            }
            return std::exp2(-x * L * L - 1.0);
        case FidelityKind::AnyonDensityBound:
            check_unit(x, "anyon density");
            return 1.0 - L * L * x;
    }
    throw std::invalid_argument("unknown fidelity kind");
}

double trajectory_fidelity(FlowKind kind, double x, double L) {
    switch (kind) {
        case FlowKind::GhzX:
        case FlowKind::SptXX:
            return fidelity_formula(FidelityKind::GhzXVsPure, x, L);
        case FlowKind::GhzZ:
            return fidelity_formula(FidelityKind::GhzZVsClassical, x, L);
        case FlowKind::ThermalP:
            return fidelity_formula(FidelityKind::ThermalLowerBound, thermal_beta_of_p(x), L);
        case FlowKind::ThermalBeta:
            return fidelity_formula(FidelityKind::ThermalLowerBound, x, L);
    }
    throw std::invalid_argument("unknown flow kind");
}

int steps_to_converge(const FlowMap &map, double x0, double L, double epsilon, int max_levels) {
    map.validate();
    FidelityKind fk;
    switch (map.kind) {
        case FlowKind::GhzX:
        case FlowKind::SptXX:
            fk = FidelityKind::GhzXVsPure;
            break;
        case FlowKind::GhzZ:
            fk = FidelityKind::GhzZVsClassical;
            break;
        default:
            throw std::invalid_argument("steps_to_converge needs an exact fidelity; " +
                                        std::string(flow_kind_name(map.kind)) + " only has a lower bound");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    }
    bool in_basin = fk == FidelityKind::GhzXVsPure ? (x0 >= 0.0 && x0 < 0.5) : (x0 > 0.0 && x0 < 1.0);
    if (!in_basin) {
        throw NotConvergedError("x0 = " + std::to_string(x0) + " is not in the basin of the stable fixed point");
    }
    double x = x0;
    double size = L;
    for (int l = 0; l <= max_levels; l++) {
        if (size < 1.0) {
            throw NotConvergedError("fidelity did not reach 1 - epsilon before the system shrank below one site");
        }
        if (fidelity_formula(fk, x, size) >= 1.0 - epsilon) {
            return l;
        }
        x = map(x);
        size /= map.block;
    }
    throw NotConvergedError("fidelity did not reach 1 - epsilon within " + std::to_string(max_levels) + " levels");
}

}  // namespace mixrg
