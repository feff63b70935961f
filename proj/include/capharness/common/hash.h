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

#ifndef CAPHARNESS_COMMON_HASH_H_
#define CAPHARNESS_COMMON_HASH_H_

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>

namespace capharness {

inline constexpr uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
inline constexpr uint64_t kFnvPrime = 0x100000001b3ULL;

// 64-bit FNV-1a over raw bytes.
uint64_t Fnv1a64(std::span<const uint8_t> bytes, uint64_t basis = kFnvOffsetBasis);
uint64_t Fnv1a64(std::string_view text, uint64_t basis = kFnvOffsetBasis);

// hash64(seed, parts...): FNV-1a over the seed as 8 little-endian bytes,
// then for each part its length as 8 little-endian bytes followed by its
// bytes; the final word is passed through Mix64. The length prefix keeps
// ("ab", "c") and ("a", "bc") apart.
uint64_t Hash64(uint64_t seed, std::initializer_list<std::string_view> parts);

// SHA-256 of `bytes` as lowercase hex.
std::string Sha256Hex(std::span<const uint8_t> bytes);
std::string Sha256Hex(std::string_view text);

std::string Base64Encode(std::span<const uint8_t> bytes);
std::string Base64Decode(std::string_view text);

// Lowercase hex of a 64-bit word, zero padded to 16 digits.
std::string Hex64(uint64_t value);

}  // namespace capharness

#endif  // CAPHARNESS_COMMON_HASH_H_
