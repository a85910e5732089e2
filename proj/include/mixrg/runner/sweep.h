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


#ifndef MIXRG_RUNNER_SWEEP_H
#define MIXRG_RUNNER_SWEEP_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mixrg/rg/rg_decoder.h"
#include "mixrg/runner/config.h"

namespace mixrg {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class ExperimentKind { Flow, Rg, Decode, Tmwpm };

std::string_view experiment_name(ExperimentKind kind);
ExperimentKind parse_experiment(std::string_view name);

/// Every key an experiment understands, with its default value. The common
/// keys are `seed`, `workers` and `out`.
Config default_config(ExperimentKind kind);

/// Where configuration values come from, in increasing precedence:
/// defaults, `file`, environment, then `overrides` and the explicit flags.
struct ConfigSources {
    std::string file;
    std::vector<std::string> overrides;
    std::optional<uint64_t> seed;
    std::optional<int> workers;
    std::optional<std::string> out;
    bool use_environment = true;
};

/// Layers the sources over the defaults. Throws ConfigError for keys the
/// experiment does not define.
Config resolve_config(ExperimentKind kind, const ConfigSources &sources);

/// Keys that select how a sweep runs rather than what it computes; they are
/// excluded from the config hash.
bool is_execution_key(const std::string &key);

/// One grid cell that raised instead of producing rows.
struct FailedCell {
    size_t index = 0;
    std::string parameters;
    std::string error;
};

struct SweepResult {
    ExperimentKind kind = ExperimentKind::Flow;
    std::vector<std::string> columns;
    /// Rows in canonical cell order, already formatted.
    std::vector<std::vector<std::string>> rows;
    size_t cells = 0;
    std::vector<FailedCell> failed;
    std::string canonical_config;
    std::string config_hash;
    double wall_seconds = 0;
    /// Rg sweeps with at least two noise strengths.
    std::optional<ThresholdEstimate> threshold;
    std::string threshold_error;

    std::string csv() const;
    std::string summary_json() const;
};

/// Decimal with 17 significant digits.
std::string format_double(double v);

/// Checks every grid value of `config` against the target module's
/// preconditions. Throws ConfigError naming the offending key.
void validate_config(ExperimentKind kind, const Config &config);

/// Validates, then evaluates every grid cell on `workers` threads. Cell
/// seeds are derived from the master seed and the cell's parameter values, so
/// results do not depend on scheduling or on other cells in the grid.
SweepResult run_sweep(ExperimentKind kind, const Config &config);

/// Writes `content` to a temporary sibling and renames it into place.
void write_file_atomic(const std::string &path, const std::string &content);

/// Writes <dir>/<experiment>.csv and <dir>/<experiment>.json.
void write_outputs(const SweepResult &result, const std::string &dir);

}  // namespace mixrg

#endif
