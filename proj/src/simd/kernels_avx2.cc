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

#include <immintrin.h>

#include <vector>

#include "mixrg/common/rng.h"
#include "mixrg/simd/kernels.h"

namespace mixrg::simd::avx2 {

namespace {

inline __m256i hash32x8(__m256i x) {
    const __m256i m1 = _mm256_set1_epi32(0x7FEB352D);
    const __m256i m2 = _mm256_set1_epi32(static_cast<int>(0x846CA68BU));
    x = _mm256_xor_si256(x, _mm256_srli_epi32(x, 16));
    x = _mm256_mullo_epi32(x, m1);
    x = _mm256_xor_si256(x, _mm256_srli_epi32(x, 15));
    x = _mm256_mullo_epi32(x, m2);
    x = _mm256_xor_si256(x, _mm256_srli_epi32(x, 16));
    return x;
}

}  // namespace

void bernoulli_bits(std::span<uint64_t> out, size_t nbits, uint64_t key, uint32_t counter_base,
                    uint32_t threshold) {
    const __m256i lo = _mm256_set1_epi32(static_cast<int>(static_cast<uint32_t>(key)));
    const __m256i hi = _mm256_set1_epi32(static_cast<int>(static_cast<uint32_t>(key >> 32)));
    const __m256i sign = _mm256_set1_epi32(static_cast<int>(0x80000000U));
    const __m256i thr = _mm256_xor_si256(_mm256_set1_epi32(static_cast<int>(threshold)), sign);
    const __m256i lane = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);

    size_t full_words = nbits / 64;
    for (size_t w = 0; w < full_words; w++) {
        uint64_t word = 0;
        uint32_t base = counter_base + static_cast<uint32_t>(w * 64);
        for (int chunk = 0; chunk < 8; chunk++) {
            __m256i ctr = _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(base + 8 * chunk)), lane);
            __m256i x = hash32x8(_mm256_xor_si256(ctr, lo));
            x = hash32x8(_mm256_add_epi32(x, hi));
            // Unsigned x < threshold via signed compare on sign-flipped words.
            __m256i lt = _mm256_cmpgt_epi32(thr, _mm256_xor_si256(x, sign));
            uint64_t bits = static_cast<uint32_t>(_mm256_movemask_ps(_mm256_castsi256_ps(lt)));
            word |= bits << (8 * chunk);
        }
        out[w] = word;
    }
    size_t rest = nbits - full_words * 64;
    if (rest > 0) {
        uint64_t word = 0;
        for (size_t k = 0; k < rest; k++) {
            uint32_t ctr = counter_base + static_cast<uint32_t>(full_words * 64 + k);
            if (counter_word(key, ctr) < threshold) {
                word |= uint64_t{1} << k;
            }
        }
        out[full_words] = word;
    }
}

void syndrome_rows(std::span<const uint64_t> north, std::span<const uint64_t> west,
                   std::span<uint64_t> out, size_t L, size_t wpr) {
    if (wpr == 1) {
        // One word per row: lanes are rows.
        const __m256i one = _mm256_set1_epi64x(1);
        const __m128i top = _mm_cvtsi32_si128(static_cast<int>(L - 1));
        size_t r = 0;
        for (; r + 4 < L; r += 4) {
            __m256i n0 = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(&north[r]));
            __m256i n1 = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(&north[r + 1]));
            __m256i w0 = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(&west[r]));
            __m256i rot = _mm256_or_si256(_mm256_srli_epi64(w0, 1), _mm256_sll_epi64(_mm256_and_si256(w0, one), top));
            __m256i o = _mm256_xor_si256(_mm256_xor_si256(n0, n1), _mm256_xor_si256(w0, rot));
            _mm256_storeu_si256(reinterpret_cast<__m256i *>(&out[r]), o);
        }
        for (; r < L; r++) {
            uint64_t w0 = west[r];
            out[r] = north[r] ^ north[(r + 1) % L] ^ w0 ^ ((w0 >> 1) | ((w0 & 1) << (L - 1)));
        }
        return;
    }

    // Several words per row: rotate word-wise through a padded row buffer,
    // then combine the four terms four words at a time.
    std::vector<uint64_t> padded(wpr + 4, 0);
    std::vector<uint64_t> rot(wpr + 4, 0);
    size_t top = (L - 1) % 64;
    for (size_t r = 0; r < L; r++) {
        const uint64_t *n0 = &north[r * wpr];
        const uint64_t *n1 = &north[((r + 1) % L) * wpr];
        const uint64_t *w0 = &west[r * wpr];
        uint64_t *o = &out[r * wpr];
        for (size_t w = 0; w < wpr; w++) {
            padded[w] = w0[w];
        }
        padded[wpr] = 0;
        size_t w = 0;
        for (; w + 4 <= wpr; w += 4) {
            __m256i cur = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(&padded[w]));
            __m256i nxt = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(&padded[w + 1]));
            __m256i rr = _mm256_or_si256(_mm256_srli_epi64(cur, 1), _mm256_slli_epi64(nxt, 63));
            _mm256_storeu_si256(reinterpret_cast<__m256i *>(&rot[w]), rr);
        }
        for (; w < wpr; w++) {
            rot[w] = (padded[w] >> 1) | (padded[w + 1] << 63);
        }
        rot[wpr - 1] = (padded[wpr - 1] >> 1) | ((padded[0] & 1) << top);
        w = 0;
        for (; w + 4 <= wpr; w += 4) {
            __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(&n0[w]));
            __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(&n1[w]));
            __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(&w0[w]));
            __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(&rot[w]));
            _mm256_storeu_si256(reinterpret_cast<__m256i *>(&o[w]),
                                _mm256_xor_si256(_mm256_xor_si256(a, b), _mm256_xor_si256(c, d)));
        }
        for (; w < wpr; w++) {
            o[w] = n0[w] ^ n1[w] ^ w0[w] ^ rot[w];
        }
    }
}

}  // namespace mixrg::simd::avx2
