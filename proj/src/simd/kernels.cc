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

#include "mixrg/simd/dispatch.h"
#include "mixrg/simd/kernels.h"

namespace mixrg::simd {

void bernoulli_bits(std::span<uint64_t> out, size_t nbits, uint64_t key, uint32_t counter_base,
                    uint32_t threshold) {
#if defined(MIXRG_HAVE_AVX2)
    if (active_isa() == Isa::Avx2) {
        avx2::bernoulli_bits(out, nbits, key, counter_base, threshold);
        return;
    }
#endif
    scalar::bernoulli_bits(out, nbits, key, counter_base, threshold);
}

void syndrome_rows(std::span<const uint64_t> north, std::span<const uint64_t> west,
                   std::span<uint64_t> out, size_t L, size_t wpr) {
    switch (active_isa()) {
        case Isa::Scalar:
            scalar::syndrome_rows(north, west, out, L, wpr);
            return;
        case Isa::Avx2:
#if defined(MIXRG_HAVE_AVX2)
            avx2::syndrome_rows(north, west, out, L, wpr);
            return;
#endif
            [[fallthrough]];
        case Isa::Packed:
            packed::syndrome_rows(north, west, out, L, wpr);
            return;
    }
}

size_t popcount(std::span<const uint64_t> words) {
    return scalar::popcount(words);
}

}  // namespace mixrg::simd
