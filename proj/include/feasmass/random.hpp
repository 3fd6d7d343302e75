// Copyright 2026 The feasmass Authors
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

#pragma once

#include <cstdint>

namespace feasmass {

/// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based generator: the k-th draw for a seed depends only on
/// (seed, k), so results do not depend on call order or platform.
constexpr std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t counter) {
    return mix64(mix64(seed) ^ (counter * 0xD1B54A32D192ED03ULL));
}

/// Uniform double in [0, 1) with 53 random bits.
constexpr double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(counter_bits(seed, counter) >> 11) * 0x1.0p-53;
}

}  // namespace feasmass
