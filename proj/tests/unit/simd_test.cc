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

#include "mixrg/simd/kernels.h"

#include <gtest/gtest.h>

#include <random>

#include "mixrg/common/rng.h"
#include "mixrg/simd/dispatch.h"

using namespace mixrg;

TEST(dispatch, scoped_override_restores) {
    simd::Isa before = simd::active_isa();
    {
        simd::ScopedIsa s(simd::Isa::Scalar);
        EXPECT_EQ(simd::active_isa(), simd::Isa::Scalar);
    }
    EXPECT_EQ(simd::active_isa(), before);
    EXPECT_TRUE(simd::isa_available(simd::Isa::Packed));
}

TEST(kernels, bernoulli_scalar_is_threshold_compare) {
    std::vector<uint64_t> out(2, 0);
    uint32_t th = probability_threshold(0.25);
    simd::scalar::bernoulli_bits(out, 100, 42, 7, th);
    for (size_t k = 0; k < 100; k++) {
        bool expect = counter_word(42, 7 + static_cast<uint32_t>(k)) < th;
        EXPECT_EQ(((out[k / 64] >> (k % 64)) & 1) != 0, expect);
    }
    EXPECT_EQ(out[1] >> 36, 0u);
}

#if defined(MIXRG_HAVE_AVX2)
TEST(kernels, bernoulli_avx2_matches_scalar) {
    if (!simd::isa_available(simd::Isa::Avx2)) {
        GTEST_SKIP() << "no avx2";
    }
    for (size_t nbits : {1u, 7u, 63u, 64u, 65u, 200u, 1000u}) {
        for (double p : {0.0, 1e-3, 0.3, 0.999}) {
            size_t words = (nbits + 63) / 64;
            std::vector<uint64_t> a(words, 0), b(words, 0);
            uint32_t th = probability_threshold(p);
            simd::scalar::bernoulli_bits(a, nbits, 5, 123, th);
            simd::avx2::bernoulli_bits(b, nbits, 5, 123, th);
            EXPECT_EQ(a, b) << nbits << " " << p;
        }
    }
}

TEST(kernels, syndrome_avx2_matches_scalar) {
    if (!simd::isa_available(simd::Isa::Avx2)) {
        GTEST_SKIP() << "no avx2";
    }
    std::mt19937_64 rng(1);
    for (size_t L : {2u, 4u, 6u, 8u, 10u, 64u, 66u, 128u, 190u, 256u}) {
        size_t wpr = (L + 63) / 64;
        std::vector<uint64_t> n(L * wpr), w(L * wpr), a(L * wpr), b(L * wpr), c(L * wpr);
        uint64_t tail = L % 64 == 0 ? ~uint64_t{0} : (uint64_t{1} << (L % 64)) - 1;
        for (size_t i = 0; i < n.size(); i++) {
            n[i] = rng();
            w[i] = rng();
            if (i % wpr == wpr - 1) {
                n[i] &= tail;
                w[i] &= tail;
            }
        }
        simd::scalar::syndrome_rows(n, w, a, L, wpr);
        simd::packed::syndrome_rows(n, w, b, L, wpr);
        simd::avx2::syndrome_rows(n, w, c, L, wpr);
        EXPECT_EQ(a, b) << L;
        EXPECT_EQ(a, c) << L;
    }
}
#endif

TEST(rng, derive_seed_separates_paths) {
    EXPECT_NE(derive_seed(1, {0}), derive_seed(1, {1}));
    EXPECT_NE(derive_seed(1, {0, 1}), derive_seed(1, {1, 0}));
    EXPECT_EQ(derive_seed(9, {3, 4}), derive_seed(9, {3, 4}));
    EXPECT_EQ(probability_threshold(0.0), 0u);
}
