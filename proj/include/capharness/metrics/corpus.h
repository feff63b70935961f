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

#ifndef CAPHARNESS_METRICS_CORPUS_H_
#define CAPHARNESS_METRICS_CORPUS_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "capharness/metrics/cider.h"
#include "capharness/metrics/eval_pair.h"
#include "capharness/metrics/meteor.h"
#include "capharness/metrics/rouge.h"

namespace capharness {

struct CorpusScores {
  std::array<double, 4> bleu{};  // bleu[k - 1] is BLEU-k
  double meteor = 0.0;
  double rouge_l = 0.0;
  double cider = 0.0;        // CIDEr-D
  double cider_plain = 0.0;
  uint64_t testlen = 0;
  uint64_t reflen = 0;

  // testlen / reflen, 0 when reflen is 0.
  double Ratio() const;

  bool operator==(const CorpusScores&) const = default;
};

struct SampleScores {
  std::string sample_id;
  std::array<double, 4> bleu{};
  double meteor = 0.0;
  double rouge_l = 0.0;
  double cider = 0.0;
  double cider_plain = 0.0;
  uint64_t testlen = 0;  // candidate tokens
  uint64_t reflen = 0;   // closest reference length

  bool operator==(const SampleScores&) const = default;
};

struct CorpusEvaluation {
  CorpusScores corpus;
  std::vector<SampleScores> samples;  // same order as the input pairs
};

struct ScoreOptions {
  MeteorOptions meteor;
  double rouge_beta = kRougeBeta;
  double cider_sigma = 6.0;
  std::size_t workers = 1;
};

// Runs every lexical metric over the corpus. Throws MetricError for an empty
// corpus or one whose candidates are all empty.
CorpusEvaluation ScoreCorpus(std::span<const EvalPair> pairs, const ScoreOptions& options = {});

// Keys: bleu1..bleu4, meteor, rouge_l, cider, cider_plain, testlen, reflen,
// ratio. `ratio` is derived and ignored when reading.
void to_json(nlohmann::json& j, const CorpusScores& s);
void from_json(const nlohmann::json& j, CorpusScores& s);
void to_json(nlohmann::json& j, const SampleScores& s);
void from_json(const nlohmann::json& j, SampleScores& s);

}  // namespace capharness

#endif  // CAPHARNESS_METRICS_CORPUS_H_
