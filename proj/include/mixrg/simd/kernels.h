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

#ifndef MIXRG_SIMD_KERNELS_H
#define MIXRG_SIMD_KERNELS_H

#include <cstddef>
#include <cstdint>
#include <span>

namespace mixrg::simd {

// Bit rows are packed little-endian: bit c of a row lives in word c / 64 at
// position c % 64. A grid of `rows` rows uses `wpr` words per row, stored
// row-major. Bits past the row length are always zero.

/// Fills `nbits` bits of `out` with independent Bernoulli draws: bit k is set
/// iff counter_word(key, counter_base + k) < threshold. Unused high bits of the
/// final word are cleared.
void bernoulli_bits(std::span<uint64_t> out, size_t nbits, uint64_t key, uint32_t counter_base,
                    uint32_t threshold);

/// Plaquette parities of a torus with `L` plaquettes per side.
///
/// `north` and `west` hold the north/west edge owned by each plaquette. Output
/// bit (r, c) = north(r,c) ^ north(r+1,c) ^ west(r,c) ^ west(r,c+1), indices
/// mod L.
void syndrome_rows(std::span<const uint64_t> north, std::span<const uint64_t> west,
                   std::span<uint64_t> out, size_t L, size_t wpr);

/// Total number of set bits.
size_t popcount(std::span<const uint64_t> words);

namespace scalar {
void bernoulli_bits(std::span<uint64_t> out, size_t nbits, uint64_t key, uint32_t counter_base,
                    uint32_t threshold);
void syndrome_rows(std::span<const uint64_t> north, std::span<const uint64_t> west,
                   std::span<uint64_t> out, size_t L, size_t wpr);
size_t popcount(std::span<const uint64_t> words);
}  // namespace scalar

namespace packed {
void syndrome_rows(std::span<const uint64_t> north, std::span<const uint64_t> west,
                   std::span<uint64_t> out, size_t L, size_t wpr);
}  // namespace packed

#if defined(MIXRG_HAVE_AVX2)
namespace avx2 {
void bernoulli_bits(std::span<uint64_t> out, size_t nbits, uint64_t key, uint32_t counter_base,
                    uint32_t threshold);
void syndrome_rows(std::span<const uint64_t> north, std::span<const uint64_t> west,
                   std::span<uint64_t> out, size_t L, size_t wpr);
}  // namespace avx2
#endif

}  // namespace mixrg::simd

#endif
