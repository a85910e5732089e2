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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace mixrg::simd {

namespace {

constexpr int kNotForced = -1;
std::atomic<int> forced_isa{kNotForced};

Isa detect_best() {
    if (isa_available(Isa::Avx2)) {
        return Isa::Avx2;
    }
    return Isa::Packed;
}

Isa from_environment() {
    const char *env = std::getenv("MIXRG_SIMD");
    if (env == nullptr) {
        return detect_best();
    }
    std::string v(env);
    if (v == "scalar") {
        return Isa::Scalar;
    }
    if (v == "packed") {
        return Isa::Packed;
    }
    if (v == "avx2" && isa_available(Isa::Avx2)) {
        return Isa::Avx2;
    }
    return detect_best();
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::Scalar:
            return "scalar";
        case Isa::Packed:
            return "packed";
        case Isa::Avx2:
            return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::Scalar:
        case Isa::Packed:
            return true;
        case Isa::Avx2:
#if defined(MIXRG_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

Isa active_isa() {
    int forced = forced_isa.load(std::memory_order_relaxed);
    if (forced != kNotForced) {
        return static_cast<Isa>(forced);
    }
    static const Isa chosen = from_environment();
    return chosen;
}

void force_isa(Isa isa) {
    if (!isa_available(isa)) {
        throw std::invalid_argument("SIMD tier '" + std::string(isa_name(isa)) + "' is not available on this machine");
    }
    forced_isa.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void reset_isa() {
    forced_isa.store(kNotForced, std::memory_order_relaxed);
}

ScopedIsa::ScopedIsa(Isa isa) : previous_(forced_isa.load(std::memory_order_relaxed)) {
    force_isa(isa);
}

ScopedIsa::~ScopedIsa() {
    forced_isa.store(previous_, std::memory_order_relaxed);
}

}  // namespace mixrg::simd
