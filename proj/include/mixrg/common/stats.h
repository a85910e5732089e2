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


#ifndef MIXRG_COMMON_STATS_H
#define MIXRG_COMMON_STATS_H

#include <optional>
#include <span>
#include <vector>

namespace mixrg {

/// First zero of a piecewise-linear curve through (xs[i], ys[i]) where the
/// values change from negative to non-negative, or std::nullopt.
std::optional<double> first_upward_crossing(std::span<const double> xs, std::span<const double> ys);

/// Crossing of two curves sampled on a common grid: the first point where
/// `rising - falling` changes sign from negative to non-negative.
std::optional<double> curve_crossing(
    std::span<const double> xs, std::span<const double> falling, std::span<const double> rising);

/// Linear-interpolated quantile of unsorted data, q in [0, 1].
double quantile(std::vector<double> values, double q);

}  // namespace mixrg

#endif
