// Copyright 2026 The qvlc Authors
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

#ifndef QVLC_NUMERIC_H_
#define QVLC_NUMERIC_H_

#include <cmath>
#include <cstdint>

namespace qvlc {

/// Largest integer <= x. Values within 1e-9 below an integer round up to it so
/// that products like 64 * 0.5 never lose a unit to representation error.
inline double gauss_floor(double x) { return std::floor(x + 1e-9); }

/// SplitMix64 finalizer; derives independent per-sample seeds from one seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Tolerance used when comparing diagram entropies against rates and grid points.
inline constexpr double kEntropyCompareEps = 1e-12;

}  // namespace qvlc

#endif  // QVLC_NUMERIC_H_
