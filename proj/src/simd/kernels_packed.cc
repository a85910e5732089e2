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

namespace mixrg::simd::packed {

void syndrome_rows(std::span<const uint64_t> north, std::span<const uint64_t> west,
                   std::span<uint64_t> out, size_t L, size_t wpr) {
    // East edge of (r, c) is the west edge of (r, c + 1): rotate the west row
    // down by one bit, carrying across words and wrapping at bit L - 1.
    size_t top = (L - 1) % 64;
    for (size_t r = 0; r < L; r++) {
        const uint64_t *n0 = &north[r * wpr];
        const uint64_t *n1 = &north[((r + 1) % L) * wpr];
        const uint64_t *w0 = &west[r * wpr];
        uint64_t *o = &out[r * wpr];
        for (size_t w = 0; w + 1 < wpr; w++) {
            o[w] = n0[w] ^ n1[w] ^ w0[w] ^ ((w0[w] >> 1) | (w0[w + 1] << 63));
        }
        size_t w = wpr - 1;
        o[w] = n0[w] ^ n1[w] ^ w0[w] ^ ((w0[w] >> 1) | ((w0[0] & 1) << top));
    }
}

}  // namespace mixrg::simd::packed
