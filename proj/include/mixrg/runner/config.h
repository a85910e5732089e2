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


#ifndef MIXRG_RUNNER_CONFIG_H
#define MIXRG_RUNNER_CONFIG_H

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mixrg {

/// Invalid configuration value; the message names the offending key.
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Flat key-value experiment configuration with dotted keys ("rg.levels").
///
/// Sources are layered: defaults, then a config file, then environment
/// variables (MIXRG_ followed by the key upper-cased with dots as
/// underscores), then command-line overrides.
class Config {
   public:
    /// Parses "key = value" lines; '#' starts a comment.
    static Config parse(std::string_view text);
    static Config load(const std::string &path);

    void set(const std::string &key, const std::string &value);
    /// Overlays every key of `other`.
    void merge(const Config &other);
    /// Overrides keys already present from environment variables.
    void apply_environment();
    /// Parses "key=value" and sets it.
    void apply_override(std::string_view assignment);

    bool has(const std::string &key) const;
    const std::string &raw(const std::string &key) const;

    std::string get_string(const std::string &key) const;
    int64_t get_int(const std::string &key) const;
    uint64_t get_u64(const std::string &key) const;
    double get_double(const std::string &key) const;
    bool get_bool(const std::string &key) const;
    /// Comma-separated list; entries of the form start:stop:step expand to
    /// an inclusive arithmetic range.
    std::vector<double> get_double_list(const std::string &key) const;
    std::vector<int> get_int_list(const std::string &key) const;

    /// Sorted "key=value" lines.
    std::string canonical() const;
    /// FNV-1a 64 of the canonical form, as 16 hex digits.
    std::string hash() const;

    const std::map<std::string, std::string> &entries() const {
        return entries_;
    }

    static std::string environment_name(const std::string &key);

   private:
    std::map<std::string, std::string> entries_;
};

uint64_t fnv1a64(std::string_view data);

}  // namespace mixrg

#endif
