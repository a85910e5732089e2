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

#include <bit>

#include "mixrg/common/rng.h"
#include "mixrg/simd/kernels.h"

namespace mixrg::simd::scalar {

namespace {

inline bool get_bit(std::span<const uint64_t> words, size_t wpr, size_t r, size_t c) {
    return (words[r * wpr + c / 64] >> (c % 64)) & 1;
}

}  // namespace

void bernoulli_bits(std::span<uint64_t> out, size_t nbits, uint64_t key, uint32_t counter_base,
                    uint32_t threshold) {
    size_t nwords = (nbits + 63) / 64;
    for (size_t w = 0; w < nwords; w++) {
        out[w] = 0;
    }
    for (size_t k = 0; k < nbits; k++) {
        uint32_t u = counter_word(key, counter_base + static_cast<uint32_t>(k));
        if (u < threshold) {
            out[k / 64] |= uint64_t{1} << (k % 64);
        }
    }
}

void syndrome_rows(std::span<const uint64_t> north, std::span<const uint64_t> west,
                   std::span<uint64_t> out, size_t L, size_t wpr) {
    for (size_t i = 0; i < L * wpr; i++) {
        out[i] = 0;
    }
    for (size_t r = 0; r < L; r++) {
        size_t rs = (r + 1) % L;
        for (size_t c = 0; c < L; c++) {
            size_t cs = (c + 1) % L;
            bool parity = get_bit(north, wpr, r, c) ^ get_bit(north, wpr, rs, c) ^ get_bit(west, wpr, r, c) ^
                          get_bit(west, wpr, r, cs);
            if (parity) {
                out[r * wpr + c / 64] |= uint64_t{1} << (c % 64);
            }
        }
    }
}

size_t popcount(std::span<const uint64_t> words) {
    size_t total = 0;
    for (uint64_t w : words) {
        total += static_cast<size_t>(std::popcount(w));
    }
    return total;
}

}  // namespace mixrg::simd::scalar
