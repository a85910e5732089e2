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


#include "mixrg/runner/sweep.h"

#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include "json.hpp"
#include <sstream>
#include <thread>

#include "mixrg/common/rng.h"
#include "mixrg/flow/flowmaps.h"
#include "mixrg/lattice/torus.h"
#include "mixrg/matching/mwpm.h"
#include "mixrg/tmwpm/tmwpm.h"

namespace mixrg {

namespace {

using Rows = std::vector<std::vector<std::string>>;

struct Cell {
    std::string parameters;
    /// Placeholder row emitted if the cell fails; the estimate columns are nan.
    std::vector<std::string> failure_row;
    std::function<Rows()> run;
};

uint64_t bits(double v) {
    return std::bit_cast<uint64_t>(v);
}

std::string fmt_int(int64_t v) {
    return std::to_string(v);
}

std::string param_text(std::initializer_list<std::pair<const char *, std::string>> kv) {
    std::string s;
    for (const auto &[k, v] : kv) {
        if (!s.empty()) {
            s += ",";
        }
        s += k;
        s += "=";
        s += v;
    }
    return s;
}

void require(bool ok, const std::string &key, const std::string &message) {
    if (!ok) {
        throw ConfigError(key + ": " + message);
    }
}

template <typename F>
void check_module(const std::string &key, F &&f) {
    try {
        f();
    } catch (const ConfigError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw ConfigError(key + ": " + e.what());
    }
}

void require_probabilities(const std::vector<double> &ps, const std::string &key) {
    require(!ps.empty(), key, "grid is empty");
    for (double p : ps) {
        require(std::isfinite(p) && p >= 0 && p <= 1, key, "probability " + format_double(p) + " outside [0, 1]");
    }
}

void require_positive(int64_t v, const std::string &key) {
    require(v >= 1, key, "must be positive, got " + std::to_string(v));
}

std::vector<Cell> flow_cells(const Config &cfg, uint64_t) {
    FlowMap map{parse_flow_kind(cfg.get_string("flow.kind")), static_cast<int>(cfg.get_int("flow.b"))};
    double L = cfg.get_double("flow.L");
    int levels = static_cast<int>(cfg.get_int("flow.levels"));
    std::string kind(flow_kind_name(map.kind));
    std::vector<Cell> cells;
    for (double x0 : cfg.get_double_list("flow.x0")) {
        Cell c;
        c.parameters = param_text({{"kind", kind}, {"x0", format_double(x0)}});
        c.failure_row = {kind, fmt_int(map.block), format_double(x0), "nan", "nan", "nan", "nan"};
        c.run = [=]() {
            FlowTrajectory t = flow_trajectory(map, x0, L, levels);
            Rows rows;
            for (size_t l = 0; l < t.values.size(); l++) {
                rows.push_back({kind, fmt_int(map.block), format_double(x0), fmt_int(static_cast<int64_t>(l)),
                                format_double(t.values[l]), format_double(t.sizes[l]),
                                format_double(trajectory_fidelity(map.kind, t.values[l], t.sizes[l]))});
            }
            return rows;
        };
        cells.push_back(std::move(c));
    }
    return cells;
}

uint64_t rg_seed(uint64_t master, double p, int L) {
    return derive_seed(master, {0x7267, bits(p), static_cast<uint64_t>(L)});
}

std::vector<Cell> rg_cells(const Config &cfg, uint64_t master, std::vector<DensitySamples> *samples) {
    std::vector<double> ps = cfg.get_double_list("rg.p");
    std::vector<int> Ls = cfg.get_int_list("rg.L");
    int levels = static_cast<int>(cfg.get_int("rg.levels"));
    int N = static_cast<int>(cfg.get_int("rg.N"));
    samples->assign(ps.size() * Ls.size(), DensitySamples{});
    std::vector<Cell> cells;
    for (size_t li = 0; li < Ls.size(); li++) {
        for (size_t pi = 0; pi < ps.size(); pi++) {
            double p = ps[pi];
            int L = Ls[li];
            uint64_t seed = rg_seed(master, p, L);
            DensitySamples *slot = &(*samples)[li * ps.size() + pi];
            Cell c;
            c.parameters = param_text({{"p", format_double(p)}, {"L", fmt_int(L)}});
            c.failure_row = {format_double(p), fmt_int(L), "nan", "nan", "nan", fmt_int(N), std::to_string(seed)};
            c.run = [=]() {
                *slot = density_samples(p, L, levels, N, seed);
                RgTrajectory t = summarize(*slot, p, L, seed);
                Rows rows;
                for (int l = 0; l <= levels; l++) {
                    rows.push_back({format_double(p), fmt_int(L), fmt_int(l), format_double(t.q_mean[l]),
                                    format_double(t.q_stderr[l]), fmt_int(N), std::to_string(seed)});
                }
                return rows;
            };
            cells.push_back(std::move(c));
        }
    }
    return cells;
}

std::vector<Cell> decode_cells(const Config &cfg, uint64_t master) {
    std::vector<double> ps = cfg.get_double_list("decode.p");
    std::vector<int> Ls = cfg.get_int_list("decode.L");
    int N = static_cast<int>(cfg.get_int("decode.N"));
    std::vector<Cell> cells;
    for (int L : Ls) {
        for (double p : ps) {
            uint64_t seed = derive_seed(master, {0x6463, bits(p), static_cast<uint64_t>(L)});
            Cell c;
            c.parameters = param_text({{"p", format_double(p)}, {"L", fmt_int(L)}});
            c.failure_row = {format_double(p), fmt_int(L), "nan", fmt_int(N), "nan", "nan"};
            c.run = [=]() {
                DecodeEstimate e = decode_failure_rate(p, L, N, seed);
                return Rows{{format_double(p), fmt_int(L), fmt_int(e.failures), fmt_int(N), format_double(e.rate),
                             format_double(e.std_error)}};
            };
            cells.push_back(std::move(c));
        }
    }
    return cells;
}

std::vector<Cell> tmwpm_cells(const Config &cfg, uint64_t master) {
    std::vector<double> ps = cfg.get_double_list("tmwpm.p");
    std::vector<int> as = cfg.get_int_list("tmwpm.a");
    int b_ratio = static_cast<int>(cfg.get_int("tmwpm.b_ratio"));
    int l_ratio = static_cast<int>(cfg.get_int("tmwpm.L_ratio"));
    int N = static_cast<int>(cfg.get_int("tmwpm.N"));
    std::vector<Cell> cells;
    for (int a : as) {
        TruncationGeometry g = TruncationGeometry::scaled(a, b_ratio, l_ratio);
        for (double p : ps) {
            uint64_t seed = derive_seed(master, {0x746D, bits(p), static_cast<uint64_t>(a), static_cast<uint64_t>(g.b),
                                                 static_cast<uint64_t>(g.L)});
            Cell c;
            c.parameters = param_text({{"p", format_double(p)}, {"a", fmt_int(a)}});
            c.failure_row = {format_double(p), fmt_int(a), fmt_int(g.b), fmt_int(g.L), "nan", "nan", fmt_int(N),
                             std::to_string(seed)};
            c.run = [=]() {
                AgreementEstimate e = agreement_probability(p, g.a, g.b, g.L, N, seed);
                return Rows{{format_double(p), fmt_int(a), fmt_int(g.b), fmt_int(g.L), format_double(e.mu),
                             format_double(e.std_error), fmt_int(N), std::to_string(seed)}};
            };
            cells.push_back(std::move(c));
        }
    }
    return cells;
}

std::vector<std::string> columns_for(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Flow:
            return {"kind", "b", "x0", "level", "x", "size", "fidelity"};
        case ExperimentKind::Rg:
            return {"p", "L", "level", "q_mean", "q_stderr", "N", "seed"};
        case ExperimentKind::Decode:
            return {"p", "L", "failures", "N", "rate", "stderr"};
        case ExperimentKind::Tmwpm:
            return {"p", "a", "b", "L", "mu", "stderr", "N", "seed"};
    }
    throw std::invalid_argument("unknown experiment");
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    return out + "\"";
}

}  // namespace

std::string_view experiment_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Flow:
            return "flow";
        case ExperimentKind::Rg:
            return "rg";
        case ExperimentKind::Decode:
            return "decode";
        case ExperimentKind::Tmwpm:
            return "tmwpm";
    }
    throw std::invalid_argument("unknown experiment");
}

ExperimentKind parse_experiment(std::string_view name) {
    for (ExperimentKind k : {ExperimentKind::Flow, ExperimentKind::Rg, ExperimentKind::Decode, ExperimentKind::Tmwpm}) {
        if (experiment_name(k) == name) {
            return k;
        }
    }
    throw std::invalid_argument("unknown experiment '" + std::string(name) + "'");
}

Config default_config(ExperimentKind kind) {
    Config c;
    c.set("seed", "1");
    c.set("workers", "1");
    c.set("out", "results");
    switch (kind) {
        case ExperimentKind::Flow:
            c.set("flow.kind", "ghz-x");
            c.set("flow.b", "3");
            c.set("flow.x0", "0.05:0.45:0.05");
            c.set("flow.L", "6561");
            c.set("flow.levels", "8");
            break;
        case ExperimentKind::Rg:
            c.set("rg.p", "0.03:0.05:0.005");
            c.set("rg.L", "64");
            c.set("rg.levels", "5");
            c.set("rg.N", "200");
            c.set("rg.bootstrap", "200");
            break;
        case ExperimentKind::Decode:
            c.set("decode.p", "0.09:0.12:0.01");
            c.set("decode.L", "8,16");
            c.set("decode.N", "500");
            break;
        case ExperimentKind::Tmwpm:
            c.set("tmwpm.p", "0.05:0.13:0.02");
            c.set("tmwpm.a", "2,3");
            c.set("tmwpm.b_ratio", "2");
            c.set("tmwpm.L_ratio", "8");
            c.set("tmwpm.N", "100");
            break;
    }
    return c;
}

Config resolve_config(ExperimentKind kind, const ConfigSources &sources) {
    Config config = default_config(kind);
    auto overlay = [&](const Config &layer, const std::string &origin) {
        for (const auto &[k, v] : layer.entries()) {
            if (!config.has(k)) {
                throw ConfigError(k + ": unknown key for the " + std::string(experiment_name(kind)) + " experiment (" +
                                  origin + ")");
            }
            config.set(k, v);
        }
    };
    if (!sources.file.empty()) {
        overlay(Config::load(sources.file), sources.file);
    }
    if (sources.use_environment) {
        config.apply_environment();
    }
    Config flags;
    for (const std::string &o : sources.overrides) {
        flags.apply_override(o);
    }
    if (sources.seed) {
        flags.set("seed", std::to_string(*sources.seed));
    }
    if (sources.workers) {
        flags.set("workers", std::to_string(*sources.workers));
    }
    if (sources.out) {
        flags.set("out", *sources.out);
    }
    overlay(flags, "command line");
    return config;
}

bool is_execution_key(const std::string &key) {
    return key == "workers" || key == "out";
}

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void validate_config(ExperimentKind kind, const Config &cfg) {
    check_module("seed", [&] { cfg.get_u64("seed"); });
    require_positive(cfg.get_int("workers"), "workers");
    require(!cfg.get_string("out").empty(), "out", "must not be empty");
    switch (kind) {
        case ExperimentKind::Flow: {
            FlowMap map;
            check_module("flow.kind", [&] { map.kind = parse_flow_kind(cfg.get_string("flow.kind")); });
            map.block = static_cast<int>(cfg.get_int("flow.b"));
            check_module("flow.b", [&] { map.validate(); });
            double L = cfg.get_double("flow.L");
            require(std::isfinite(L) && L >= 1, "flow.L", "must be a finite size >= 1");
            int64_t levels = cfg.get_int("flow.levels");
            require(levels >= 0 && levels <= 64, "flow.levels", "must lie in [0, 64]");
            std::vector<double> xs = cfg.get_double_list("flow.x0");
            require(!xs.empty(), "flow.x0", "grid is empty");
            for (double x : xs) {
                require(x >= map.domain_lo() && x <= map.domain_hi(), "flow.x0",
                        "value " + format_double(x) + " outside the map's domain");
            }
            break;
        }
        case ExperimentKind::Rg: {
            require_probabilities(cfg.get_double_list("rg.p"), "rg.p");
            std::vector<int> Ls = cfg.get_int_list("rg.L");
            require(!Ls.empty(), "rg.L", "grid is empty");
            int64_t levels = cfg.get_int("rg.levels");
            for (int L : Ls) {
                require(L >= 4 && std::has_single_bit(static_cast<unsigned>(L)), "rg.L",
                        "lattice side must be a power of two >= 4, got " + std::to_string(L));
                require(levels >= 0 && (int64_t{1} << (levels + 1)) <= L, "rg.levels",
                        "must lie in [0, log2(L) - 1] for L = " + std::to_string(L));
            }
            require_positive(cfg.get_int("rg.N"), "rg.N");
            require(cfg.get_int("rg.bootstrap") >= 0, "rg.bootstrap", "must be non-negative");
            break;
        }
        case ExperimentKind::Decode: {
            require_probabilities(cfg.get_double_list("decode.p"), "decode.p");
            std::vector<int> Ls = cfg.get_int_list("decode.L");
            require(!Ls.empty(), "decode.L", "grid is empty");
            for (int L : Ls) {
                require(L >= 2 && L % 2 == 0, "decode.L", "lattice side must be a positive even integer");
            }
            require_positive(cfg.get_int("decode.N"), "decode.N");
            break;
        }
        case ExperimentKind::Tmwpm: {
            require_probabilities(cfg.get_double_list("tmwpm.p"), "tmwpm.p");
            std::vector<int> as = cfg.get_int_list("tmwpm.a");
            require(!as.empty(), "tmwpm.a", "grid is empty");
            int64_t br = cfg.get_int("tmwpm.b_ratio"), lr = cfg.get_int("tmwpm.L_ratio");
            require_positive(br, "tmwpm.b_ratio");
            require_positive(lr, "tmwpm.L_ratio");
            for (int a : as) {
                require(a >= 1, "tmwpm.a", "buffer width must be positive");
                check_module("tmwpm.a", [&] {
                    TruncationGeometry g = TruncationGeometry::scaled(a, static_cast<int>(br), static_cast<int>(lr));
                    require(g.L % 2 == 0, "tmwpm.L_ratio", "L = L_ratio * a must be even");
                    g.validate();
                });
            }
            require_positive(cfg.get_int("tmwpm.N"), "tmwpm.N");
            break;
        }
    }
}

SweepResult run_sweep(ExperimentKind kind, const Config &config) {
    validate_config(kind, config);
    auto start = std::chrono::steady_clock::now();
    uint64_t master = config.get_u64("seed");
    int workers = static_cast<int>(config.get_int("workers"));

    std::vector<DensitySamples> samples;
    std::vector<Cell> cells;
    switch (kind) {
        case ExperimentKind::Flow:
            cells = flow_cells(config, master);
            break;
        case ExperimentKind::Rg:
            cells = rg_cells(config, master, &samples);
            break;
        case ExperimentKind::Decode:
            cells = decode_cells(config, master);
            break;
        case ExperimentKind::Tmwpm:
            cells = tmwpm_cells(config, master);
            break;
    }

    std::vector<Rows> outputs(cells.size());
    std::vector<std::string> errors(cells.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next++; i < cells.size(); i = next++) {
            try {
                outputs[i] = cells[i].run();
            } catch (const std::exception &e) {
                errors[i] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    int threads = std::max(1, std::min<int>(workers, static_cast<int>(cells.size())));
    for (int t = 1; t < threads; t++) {
        pool.emplace_back(worker);
    }
    worker();
    for (std::thread &t : pool) {
        t.join();
    }

    SweepResult r;
    r.kind = kind;
    r.columns = columns_for(kind);
    r.cells = cells.size();
    for (size_t i = 0; i < cells.size(); i++) {
        if (!errors[i].empty()) {
            r.failed.push_back({i, cells[i].parameters, errors[i]});
            r.rows.push_back(cells[i].failure_row);
        } else {
            r.rows.insert(r.rows.end(), outputs[i].begin(), outputs[i].end());
        }
    }

    if (kind == ExperimentKind::Rg && r.failed.empty()) {
        std::vector<double> ps = config.get_double_list("rg.p");
        size_t nL = config.get_int_list("rg.L").size();
        if (ps.size() >= 2) {
            std::vector<std::vector<DensitySamples>> grid(nL);
            for (size_t li = 0; li < nL; li++) {
                grid[li].assign(samples.begin() + static_cast<std::ptrdiff_t>(li * ps.size()),
                                samples.begin() + static_cast<std::ptrdiff_t>((li + 1) * ps.size()));
            }
            try {
                r.threshold = threshold_from_samples(ps, grid, static_cast<int>(config.get_int("rg.bootstrap")), master);
            } catch (const std::exception &e) {
                r.threshold_error = e.what();
            }
        }
    }

    Config hashed;
    for (const auto &[k, v] : config.entries()) {
        if (!is_execution_key(k)) {
            hashed.set(k, v);
        }
    }
    r.canonical_config = hashed.canonical();
    r.config_hash = hashed.hash();
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::string SweepResult::csv() const {
    std::ostringstream out;
    for (size_t i = 0; i < columns.size(); i++) {
        out << (i ? "," : "") << columns[i];
    }
    out << "\n";
    for (const auto &row : rows) {
        for (size_t i = 0; i < row.size(); i++) {
            out << (i ? "," : "") << csv_field(row[i]);
        }
        out << "\n";
    }
    return out.str();
}

std::string SweepResult::summary_json() const {
    nlohmann::ordered_json j;
    j["tool_version"] = kToolVersion;
    j["experiment"] = experiment_name(kind);
    j["config_hash"] = config_hash;
    j["config"] = canonical_config;
    j["wall_seconds"] = wall_seconds;
    j["cells"] = cells;
    j["rows"] = rows.size();
    j["failed_cells"] = nlohmann::ordered_json::array();
    for (const FailedCell &f : failed) {
        j["failed_cells"].push_back({{"index", f.index}, {"parameters", f.parameters}, {"error", f.error}});
    }
    if (threshold) {
        j["threshold"] = {{"p_c", threshold->p_c},
                          {"ci_lo", threshold->ci_lo},
                          {"ci_hi", threshold->ci_hi},
                          {"method", threshold->method}};
    } else if (!threshold_error.empty()) {
        j["threshold_error"] = threshold_error;
    }
    return j.dump(2) + "\n";
}

void write_file_atomic(const std::string &path, const std::string &content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        }
        f << content;
        f.flush();
        if (!f) {
            throw std::runtime_error("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot rename " + tmp.string() + " to " + target.string() + ": " + ec.message());
    }
}

void write_outputs(const SweepResult &result, const std::string &dir) {
    std::filesystem::create_directories(dir);
    std::string base = (std::filesystem::path(dir) / experiment_name(result.kind)).string();
    write_file_atomic(base + ".csv", result.csv());
    write_file_atomic(base + ".json", result.summary_json());
}

}  // namespace mixrg
