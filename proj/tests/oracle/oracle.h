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

// Slow reference implementations used only by the tests. They share no code
// with the library beyond the tokenizer and the stemmer, and favour plain
// loops over speed.

#ifndef CAPHARNESS_TESTS_ORACLE_ORACLE_H_
#define CAPHARNESS_TESTS_ORACLE_ORACLE_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

using Tokens = std::vector<std::string>;

struct Pair {
  Tokens candidate;
  std::vector<Tokens> references;
};

struct BleuOut {
  std::array<double, 4> bleu{};
  uint64_t testlen = 0;
  uint64_t reflen = 0;
};

BleuOut Bleu(const std::vector<Pair>& pairs);

// Exhaustive staged alignment: every assignment of every stage is visited.
// synonyms: each inner vector is one set.
double Meteor(const std::vector<Pair>& pairs, bool stem,
              const std::vector<std::vector<std::string>>& synonyms = {});
double MeteorSentence(const Tokens& cand, const Tokens& ref, bool stem,
                      const std::vector<std::vector<std::string>>& synonyms = {});

std::size_t Lcs(const Tokens& a, const Tokens& b);
double RougeL(const std::vector<Pair>& pairs, double beta = 1.2);

// Dense TF-IDF vectors over the corpus vocabulary.
double CiderPlain(const std::vector<Pair>& pairs);
double CiderD(const std::vector<Pair>& pairs, double sigma = 6.0);

// Character 3-grams of " text ", bucketed by FNV-1a into 4096 slots.
std::vector<double> HashedTrigramEmbedding(const std::u32string& text);

// Peak signal-to-noise ratio over 8-bit samples; +inf for identical inputs.
double Psnr(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b);

}  // namespace oracle

#endif  // CAPHARNESS_TESTS_ORACLE_ORACLE_H_
