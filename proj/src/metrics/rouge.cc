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

#include "capharness/metrics/rouge.h"

#include <algorithm>
#include <vector>

#include "capharness/common/errors.h"

namespace capharness {

std::size_t LcsLength(const TokenSeq& a, const TokenSeq& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double RougeLScore(const TokenSeq& candidate, const TokenSeq& reference, double beta) {
  const std::size_t lcs = LcsLength(candidate, reference);
  if (lcs == 0) return 0.0;
  const double p = static_cast<double>(lcs) / static_cast<double>(candidate.size());
  const double r = static_cast<double>(lcs) / static_cast<double>(reference.size());
  const double b2 = beta * beta;
  return (1.0 + b2) * p * r / (r + b2 * p);
}

double SentenceRougeL(const EvalPair& pair, double beta) {
  double best = 0.0;
  for (const TokenSeq& ref : pair.references) {
    best = std::max(best, RougeLScore(pair.candidate, ref, beta));
  }
  return best;
}

double RougeL(std::span<const EvalPair> pairs, double beta) {
  if (pairs.empty()) throw MetricError("ROUGE-L needs at least one pair");
  std::vector<double> scores;
  scores.reserve(pairs.size());
  for (const EvalPair& p : pairs) scores.push_back(SentenceRougeL(p, beta));
  return OrderIndependentMean(scores);
}

}  // namespace capharness
