/* Copyright 2026 The capharness Authors. All Rights Reserved.

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

#ifndef CAPHARNESS_COMMON_RNG_H_
#define CAPHARNESS_COMMON_RNG_H_

#include <array>
#include <cstdint>

namespace capharness {

// SplitMix64 (Steele, Lea, Flood 2014):
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}
  uint64_t Next();

 private:
  uint64_t state_;
};

// The SplitMix64 output function applied to a single word.
uint64_t Mix64(uint64_t x);

// xoshiro256** (Blackman, Vigna 2018) with its 256-bit state filled by four
// successive SplitMix64 outputs of the seed. Recurrence:
//   result = rotl(s1 * 5, 7) * 9
//   t = s1 << 17
//   s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3; s2 ^= t; s3 = rotl(s3, 45)
//
// All corruption randomness goes through this generator; the standard
// library engines and distributions are never used because their output is
// implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t NextU64();

  // Uniform double in [0, 1) with 53 random bits: (x >> 11) * 2^-53.
  double Uniform();

  // Uniform double in [lo, hi).
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n). n must be > 0. Uses Lemire's multiply-shift
  // rejection method so the result is unbiased.
  uint64_t UniformInt(uint64_t n);

  // Standard normal via the Box-Muller transform. Both variates of a pair
  // are used; the cached second one is part of the generator state.
  double Normal();

  // Poisson variate with the given mean. Knuth's product method below 30,
  // Hoermann's PTRS transformed rejection above.
  uint64_t Poisson(double mean);

 private:
  std::array<uint64_t, 4> s_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace capharness

#endif  // CAPHARNESS_COMMON_RNG_H_
