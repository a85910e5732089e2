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


#include <CLI11.hpp>
#include <filesystem>
#include <iomanip>
#include <iostream>

#include "json.hpp"
#include "mixrg/runner/config.h"
#include "mixrg/runner/sweep.h"
#include "mixrg/runner/verify.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitCheckFailed = 2;

struct CommonFlags {
    std::string config;
    std::vector<std::string> overrides;
    uint64_t seed = 0;
    int workers = 0;
    std::string out;
};

void add_common_flags(CLI::App *app, CommonFlags &flags) {
    app->add_option("--config", flags.config, "Key-value configuration file")->check(CLI::ExistingFile);
    app->add_option("--seed", flags.seed, "Master seed");
    app->add_option("--workers", flags.workers, "Worker threads")->check(CLI::PositiveNumber);
    app->add_option("--out", flags.out, "Output directory");
    app->add_option("--set", flags.overrides, "Override a configuration key (key=value)");
}

mixrg::ConfigSources sources_from(const CLI::App *app, const CommonFlags &flags) {
    mixrg::ConfigSources s;
    s.file = flags.config;
    s.overrides = flags.overrides;
    if (app->count("--seed")) {
        s.seed = flags.seed;
    }
    if (app->count("--workers")) {
        s.workers = flags.workers;
    }
    if (app->count("--out")) {
        s.out = flags.out;
    }
    return s;
}

int run_sweep_command(mixrg::ExperimentKind kind, const CLI::App *app, const CommonFlags &flags) {
    mixrg::Config config = mixrg::resolve_config(kind, sources_from(app, flags));
    mixrg::SweepResult result = mixrg::run_sweep(kind, config);
    std::string out = config.get_string("out");
    mixrg::write_outputs(result, out);
    for (const mixrg::FailedCell &f : result.failed) {
        std::cerr << "warning: cell " << f.index << " (" << f.parameters << ") failed: " << f.error << "\n";
    }
    std::cout << result.summary_json();
    return kExitOk;
}

int run_verify_command(const std::string &suite, bool inject_weight_bug, const std::string &out) {
    std::vector<mixrg::VerifyReport> reports = mixrg::run_suite(suite, inject_weight_bug);
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    bool ok = true;
    for (const mixrg::VerifyReport &r : reports) {
        j.push_back(nlohmann::ordered_json::parse(r.to_json()));
        ok = ok && r.passed();
        for (const mixrg::CheckResult &c : r.checks) {
            std::cerr << std::setprecision(12) << (c.passed ? "PASS " : "FAIL ") << r.suite << " " << c.name << " measured=" << c.measured
                      << " " << c.comparison << " " << c.tolerance << "\n";
        }
    }
    std::string text = j.dump(2) + "\n";
    if (!out.empty()) {
        std::filesystem::create_directories(out);
        mixrg::write_file_atomic((std::filesystem::path(out) / ("verify-" + suite + ".json")).string(), text);
    }
    std::cout << text;
    return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Mixed-state renormalization and decoding experiments"};
    app.set_version_flag("--version", std::string(mixrg::kToolVersion));
    app.require_subcommand(1);

    CommonFlags flow_flags, rg_flags, decode_flags, tmwpm_flags;
    CLI::App *flow = app.add_subcommand("flow", "Iterate an RG flow map over a grid of starting points");
    add_common_flags(flow, flow_flags);

    CLI::App *rg = app.add_subcommand("rg-decoder", "Hierarchical RG decoder experiments");
    rg->require_subcommand(1);
    CLI::App *rg_sweep = rg->add_subcommand("sweep", "Anyon density flow over a (p, L) grid");
    add_common_flags(rg_sweep, rg_flags);

    CLI::App *decode = app.add_subcommand("decode", "Global matching decoder experiments");
    decode->require_subcommand(1);
    CLI::App *decode_sweep = decode->add_subcommand("sweep", "Logical failure rate over a (p, L) grid");
    add_common_flags(decode_sweep, decode_flags);

    CLI::App *tmwpm = app.add_subcommand("tmwpm", "Truncated matching experiments");
    tmwpm->require_subcommand(1);
    CLI::App *tmwpm_sweep = tmwpm->add_subcommand("sweep", "Agreement probability over a (p, a) grid");
    add_common_flags(tmwpm_sweep, tmwpm_flags);

    std::string verify_out;
    CLI::App *lab = app.add_subcommand("lab", "Dense channel laboratory");
    lab->require_subcommand(1);
    CLI::App *lab_verify = lab->add_subcommand("verify", "Run the dense channel check suite");
    lab_verify->add_option("--out", verify_out, "Directory for the JSON report");

    std::string suite;
    bool inject_weight_bug = false;
    CLI::App *verify = app.add_subcommand("verify", "Run check suites");
    verify->add_option("--suite", suite, "lab, matching-oracle or all")->required();
    verify->add_option("--out", verify_out, "Directory for the JSON report");
    verify->add_flag("--inject-weight-bug", inject_weight_bug)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (flow->parsed()) {
            return run_sweep_command(mixrg::ExperimentKind::Flow, flow, flow_flags);
        }
        if (rg_sweep->parsed()) {
            return run_sweep_command(mixrg::ExperimentKind::Rg, rg_sweep, rg_flags);
        }
        if (decode_sweep->parsed()) {
            return run_sweep_command(mixrg::ExperimentKind::Decode, decode_sweep, decode_flags);
        }
        if (tmwpm_sweep->parsed()) {
            return run_sweep_command(mixrg::ExperimentKind::Tmwpm, tmwpm_sweep, tmwpm_flags);
        }
        if (lab_verify->parsed()) {
            return run_verify_command("lab", false, verify_out);
        }
        if (verify->parsed()) {
            return run_verify_command(suite, inject_weight_bug, verify_out);
        }
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
