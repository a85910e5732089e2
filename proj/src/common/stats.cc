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


#include "mixrg/common/stats.h"

#include <algorithm>
#include <stdexcept>

namespace mixrg {

std::optional<double> first_upward_crossing(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw std::invalid_argument("crossing: grid and values differ in length");
    }
    for (size_t i = 0; i + 1 < xs.size(); i++) {
        if (ys[i] == 0.0) {
            return xs[i];
        }
        if (ys[i] < 0.0 && ys[i + 1] >= 0.0) {
            double t = ys[i] / (ys[i] - ys[i + 1]);
            return xs[i] + t * (xs[i + 1] - xs[i]);
        }
    }
    return std::nullopt;
}

std::optional<double> curve_crossing(
    std::span<const double> xs, std::span<const double> falling, std::span<const double> rising) {
    if (falling.size() != rising.size()) {
        throw std::invalid_argument("crossing: curves differ in length");
    }
    std::vector<double> d(rising.size());
    for (size_t i = 0; i < d.size(); i++) {
        d[i] = rising[i] - falling[i];
    }
    return first_upward_crossing(xs, d);
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) {
        throw std::invalid_argument("quantile of an empty sample");
    }
    std::sort(values.begin(), values.end());
    double pos = q * static_cast<double>(values.size() - 1);
    size_t i = static_cast<size_t>(pos);
    if (i + 1 >= values.size()) {
        return values.back();
    }
    double f = pos - static_cast<double>(i);
    return values[i] * (1 - f) + values[i + 1] * f;
}

}  // namespace mixrg
