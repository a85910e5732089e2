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

#ifndef MIXRG_SIMD_DISPATCH_H
#define MIXRG_SIMD_DISPATCH_H

#include <string_view>

namespace mixrg::simd {

/// Instruction-set tiers with separately compiled kernel variants.
///
/// `Scalar` selects the per-bit reference kernels. `Packed` selects portable
/// 64-bit word kernels. `Avx2` additionally uses the AVX2 variants where one
/// exists and falls back to `Packed` elsewhere.
enum class Isa { Scalar = 0, Packed = 1, Avx2 = 2 };

std::string_view isa_name(Isa isa);

/// True if the running CPU supports `isa` and the variant was compiled in.
bool isa_available(Isa isa);

/// Best available tier, unless overridden by the MIXRG_SIMD environment
/// variable ("scalar", "packed", "avx2") or by `force_isa`.
Isa active_isa();

/// Pins the dispatch tier for the current process. Throws
/// std::invalid_argument if `isa` is not available on this machine.
void force_isa(Isa isa);

/// Undoes `force_isa`.
void reset_isa();

/// RAII pin of the dispatch tier; used by the equivalence tests.
class ScopedIsa {
   public:
    explicit ScopedIsa(Isa isa);
    ~ScopedIsa();
    ScopedIsa(const ScopedIsa &) = delete;
    ScopedIsa &operator=(const ScopedIsa &) = delete;

   private:
    int previous_;
};

}  // namespace mixrg::simd

#endif
