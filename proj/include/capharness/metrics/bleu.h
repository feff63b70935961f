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

#ifndef CAPHARNESS_METRICS_BLEU_H_
#define CAPHARNESS_METRICS_BLEU_H_

#include <array>
#include <cstdint>
#include <span>

#include "capharness/metrics/eval_pair.h"

namespace capharness {

inline constexpr int kMaxBleuOrder = 4;

struct BleuResult {
  int max_n = kMaxBleuOrder;
  // scores[k - 1] is BLEU-k; entries above max_n stay 0.
  std::array<double, kMaxBleuOrder> scores{};
  // Clipped n-gram matches and candidate n-gram totals per order.
  std::array<uint64_t, kMaxBleuOrder> matches{};
  std::array<uint64_t, kMaxBleuOrder> totals{};
  uint64_t testlen = 0;
  uint64_t reflen = 0;
  double brevity_penalty = 1.0;
};

// Corpus BLEU. Clipped counts are pooled over the corpus before forming
// precisions; the effective reference length of a sample is the reference
// length closest to the candidate length, ties going to the shorter one.
// No smoothing: a zero precision at order n zeroes BLEU-k for k >= n.
//
// Throws MetricError for an empty corpus, max_n outside [1, 4], or a corpus
// whose candidates are all empty.
BleuResult Bleu(std::span<const EvalPair> pairs, int max_n = kMaxBleuOrder);

// BLEU of one pair under the same definition. An empty candidate scores 0
// instead of throwing.
BleuResult SentenceBleu(const EvalPair& pair, int max_n = kMaxBleuOrder);

}  // namespace capharness

#endif  // CAPHARNESS_METRICS_BLEU_H_
