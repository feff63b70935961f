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

#ifndef CAPHARNESS_METRICS_METEOR_H_
#define CAPHARNESS_METRICS_METEOR_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "capharness/metrics/eval_pair.h"
#include "capharness/text/tokenizer.h"

namespace capharness {

// Word equivalence classes for the synonym stage. The text format has one
// set per line, members separated by whitespace or commas; '#' starts a
// comment. Members are passed through the shared tokenizer, so a member
// must tokenize to a single token.
class SynonymTable {
 public:
  SynonymTable() = default;

  // Throws ParseError naming the offending line.
  static SynonymTable Parse(std::string_view text);
  static SynonymTable Load(const std::filesystem::path& path);

  // True when a != b and some set contains both.
  bool AreSynonyms(std::string_view a, std::string_view b) const;

  std::size_t set_count() const { return set_count_; }

 private:
  // word -> sorted ids of the sets containing it
  std::map<std::string, std::vector<int>, std::less<>> sets_;
  std::size_t set_count_ = 0;
};

struct MeteorOptions {
  const SynonymTable* synonyms = nullptr;
  bool stem = true;
  // Search nodes per alignment stage. When exhausted the best alignment
  // found so far is kept.
  std::size_t search_budget = 1'000'000;
};

struct MeteorAlignment {
  // For each candidate position, the aligned reference position or -1.
  std::vector<int> candidate_to_reference;
  int matches = 0;
  int chunks = 0;
  bool budget_exhausted = false;
};

// Staged unigram alignment: exact surface match, then Porter stems, then
// synonyms, each stage seeing only words left unaligned by the previous
// ones. Within a stage the chosen one-to-one mapping maximizes the number
// of matches, then minimizes crossing links (counting links from earlier
// stages), then minimizes chunks; remaining ties go to the mapping whose
// reference positions, read in candidate order, are lexicographically
// smallest with "unaligned" sorting last.
MeteorAlignment Align(const TokenSeq& candidate, const TokenSeq& reference,
                      const MeteorOptions& options = {});

// Maximal runs of aligned candidate words whose reference positions are
// consecutive and increasing.
int CountChunks(std::span<const int> candidate_to_reference);

// Pairs of links (i1, j1), (i2, j2) with i1 < i2 and j1 > j2.
int CountCrossings(std::span<const int> candidate_to_reference);

// F_mean = 10PR / (R + 9P), penalty = 0.5 (chunks / m)^3,
// score = F_mean (1 - penalty); 0 when nothing aligns.
double MeteorScore(const TokenSeq& candidate, const TokenSeq& reference,
                   const MeteorOptions& options = {});

// Best score over the pair's references.
double SentenceMeteor(const EvalPair& pair, const MeteorOptions& options = {});

// Mean of SentenceMeteor over the corpus. Throws MetricError when empty.
double Meteor(std::span<const EvalPair> pairs, const MeteorOptions& options = {});

}  // namespace capharness

#endif  // CAPHARNESS_METRICS_METEOR_H_
