/* Copyright 2026 The oscnet Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace oscnet {

/// SplitMix64 generator (Steele, Lea & Flood 2014), used for every random
/// draw in the library so experiments reproduce bit-for-bit across
/// platforms.
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// Test vectors: seed 0 yields 0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4,
/// 0x06C45D188009454F; seed 42 yields 0xBDD732262FEB6E95, 0x28EFE333B266F103.
///
/// Uniform reals take the top 53 bits: (next_u64() >> 11) * 2^-53, which is
/// exact in binary64 and lies in [0, 1).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : seed_(seed), state_(seed) {}

  std::uint64_t next_u64() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // [0, 1)
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // [lo, hi); callers validate lo < hi.
  double uniform(double lo, double hi) noexcept {
    const double v = lo + (hi - lo) * uniform();
    return v < hi ? v : std::nextafter(hi, lo);
  }

  // Integer in [0, n). n must be positive. Uses floor(uniform() * n); the
  // bias is below 2^-53 * n and irrelevant for shuffling datasets.
  std::size_t index(std::size_t n) noexcept {
    const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace oscnet
