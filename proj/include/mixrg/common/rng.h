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

#ifndef MIXRG_COMMON_RNG_H
#define MIXRG_COMMON_RNG_H

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace mixrg {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derives a child seed from a parent seed and a path of counters.
///
/// Monte Carlo streams are addressed as (master, cell, sample, ...); every
/// stream is a pure function of its address so results do not depend on the
/// order in which cells or samples are scheduled.
constexpr uint64_t derive_seed(uint64_t parent, std::initializer_list<uint64_t> path) {
    uint64_t s = mix64(parent);
    for (uint64_t c : path) {
        s = mix64(s ^ mix64(c + 0x632BE59BD9B4E019ULL));
    }
    return s;
}

/// 32-bit integer hash (lowbias32). Used as the counter-based bit generator;
/// the SIMD kernels implement exactly the same arithmetic.
constexpr uint32_t hash32(uint32_t x) {
    x ^= x >> 16;
    x *= 0x7FEB352DU;
    x ^= x >> 15;
    x *= 0x846CA68BU;
    x ^= x >> 16;
    return x;
}

/// Counter-based uniform 32-bit word for stream `key` at position `counter`.
constexpr uint32_t counter_word(uint64_t key, uint32_t counter) {
    uint32_t lo = static_cast<uint32_t>(key);
    uint32_t hi = static_cast<uint32_t>(key >> 32);
    return hash32(hash32(counter ^ lo) + hi);
}

/// Maps a probability to the threshold t such that P(word < t) = p (up to
/// 2^-32 quantization). p = 1 is handled by callers as "all bits set".
inline uint32_t probability_threshold(double p) {
    if (p <= 0.0) {
        return 0;
    }
    double scaled = p * 4294967296.0;
    if (scaled >= 4294967295.0) {
        return std::numeric_limits<uint32_t>::max();
    }
    return static_cast<uint32_t>(scaled + 0.5);
}

}  // namespace mixrg

#endif
