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


#include "mixrg/runner/config.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mixrg {

namespace {

std::string trim(std::string_view s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) {
        a++;
    }
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) {
        b--;
    }
    return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

double parse_double(const std::string &key, const std::string &text) {
    char *end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
        throw ConfigError(key + ": expected a number, got '" + text + "'");
    }
    return v;
}

int64_t parse_int(const std::string &key, const std::string &text) {
    char *end = nullptr;
    long long v = std::strtoll(text.c_str(), &end, 10);
    if (text.empty() || end != text.c_str() + text.size()) {
        throw ConfigError(key + ": expected an integer, got '" + text + "'");
    }
    return v;
}

}  // namespace

uint64_t fnv1a64(std::string_view data) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : data) {
        h ^= static_cast<uint8_t>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

Config Config::parse(std::string_view text) {
    Config c;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::string t = trim(line);
        if (t.empty()) {
            continue;
        }
        size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(std::string_view(t).substr(0, eq));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        }
        c.set(key, trim(std::string_view(t).substr(eq + 1)));
    }
    return c;
}

Config Config::load(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void Config::set(const std::string &key, const std::string &value) {
    entries_[key] = value;
}

void Config::merge(const Config &other) {
    for (const auto &[k, v] : other.entries_) {
        entries_[k] = v;
    }
}

std::string Config::environment_name(const std::string &key) {
    std::string name = "MIXRG_";
    for (char c : key) {
        name += (c == '.' || c == '-') ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return name;
}

void Config::apply_environment() {
    for (auto &[k, v] : entries_) {
        if (const char *env = std::getenv(environment_name(k).c_str())) {
            v = trim(env);
        }
    }
}

void Config::apply_override(std::string_view assignment) {
    size_t eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("override '" + std::string(assignment) + "': expected key=value");
    }
    std::string key = trim(assignment.substr(0, eq));
    if (key.empty()) {
        throw ConfigError("override '" + std::string(assignment) + "': empty key");
    }
    set(key, trim(assignment.substr(eq + 1)));
}

bool Config::has(const std::string &key) const {
    return entries_.count(key) != 0;
}

const std::string &Config::raw(const std::string &key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        throw ConfigError(key + ": missing required key");
    }
    return it->second;
}

std::string Config::get_string(const std::string &key) const {
    return raw(key);
}

int64_t Config::get_int(const std::string &key) const {
    return parse_int(key, raw(key));
}

uint64_t Config::get_u64(const std::string &key) const {
    const std::string &text = raw(key);
    char *end = nullptr;
    unsigned long long v = std::strtoull(text.c_str(), &end, 0);
    if (text.empty() || text[0] == '-' || end != text.c_str() + text.size()) {
        throw ConfigError(key + ": expected an unsigned integer, got '" + text + "'");
    }
    return v;
}

double Config::get_double(const std::string &key) const {
    return parse_double(key, raw(key));
}

bool Config::get_bool(const std::string &key) const {
    std::string v = raw(key);
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "1" || v == "true" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "0" || v == "false" || v == "no" || v == "off") {
        return false;
    }
    throw ConfigError(key + ": expected a boolean, got '" + raw(key) + "'");
}

std::vector<double> Config::get_double_list(const std::string &key) const {
    std::vector<double> out;
    for (const std::string &item : split(raw(key), ',')) {
        if (item.empty()) {
            throw ConfigError(key + ": empty list entry");
        }
        std::vector<std::string> parts = split(item, ':');
        if (parts.size() == 1) {
            out.push_back(parse_double(key, item));
        } else if (parts.size() == 3) {
            double start = parse_double(key, parts[0]);
            double stop = parse_double(key, parts[1]);
            double step = parse_double(key, parts[2]);
            if (!(step > 0.0) || stop < start) {
                throw ConfigError(key + ": range '" + item + "' needs start <= stop and step > 0");
            }
            int64_t count = static_cast<int64_t>(std::floor((stop - start) / step + 1e-9));
            if (count > 100000) {
                throw ConfigError(key + ": range '" + item + "' is too long");
            }
            for (int64_t i = 0; i <= count; i++) {
                // Rounded so that 0.1:0.3:0.1 yields 0.3 rather than 0.30000000000000004.
                out.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
            }
        } else {
            throw ConfigError(key + ": malformed entry '" + item + "' (use x or start:stop:step)");
        }
    }
    if (out.empty()) {
        throw ConfigError(key + ": empty list");
    }
    return out;
}

std::vector<int> Config::get_int_list(const std::string &key) const {
    std::vector<int> out;
    for (double v : get_double_list(key)) {
        if (v != std::floor(v) || std::abs(v) > 1e9) {
            throw ConfigError(key + ": expected integers, got " + std::to_string(v));
        }
        out.push_back(static_cast<int>(v));
    }
    return out;
}

std::string Config::canonical() const {
    std::string out;
    for (const auto &[k, v] : entries_) {
        out += k + "=" + v + "\n";
    }
    return out;
}

std::string Config::hash() const {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(canonical())));
    return buf;
}

}  // namespace mixrg
