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

#include "capharness/metrics/bleu.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <unordered_map>

#include "capharness/common/errors.h"

namespace capharness {
namespace {

using NgramCounts = std::unordered_map<std::string, uint64_t>;

// Tokens never contain spaces, so space-joined n-grams are unambiguous.
NgramCounts CountNgrams(const TokenSeq& tokens, int n) {
  NgramCounts counts;
  if (tokens.size() < static_cast<std::size_t>(n)) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (int k = 1; k < n; ++k) {
      key += ' ';
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

std::size_t ClosestRefLength(const EvalPair& pair) {
  const std::size_t c = pair.candidate.size();
  std::size_t best = pair.references.front().size();
  for (const TokenSeq& ref : pair.references) {
    const std::size_t r = ref.size();
    const std::size_t diff = r > c ? r - c : c - r;
    const std::size_t best_diff = best > c ? best - c : c - best;
    if (diff < best_diff || (diff == best_diff && r < best)) best = r;
  }
  return best;
}

void Accumulate(const EvalPair& pair, int max_n, BleuResult& result) {
  if (pair.references.empty()) {
    throw MetricError("sample '" + pair.sample_id + "' has no references");
  }
  result.testlen += pair.candidate.size();
  result.reflen += ClosestRefLength(pair);
  for (int n = 1; n <= max_n; ++n) {
    const NgramCounts cand = CountNgrams(pair.candidate, n);
    NgramCounts max_ref;
    for (const TokenSeq& ref : pair.references) {
      for (const auto& [gram, count] : CountNgrams(ref, n)) {
        uint64_t& slot = max_ref[gram];
        slot = std::max(slot, count);
      }
    }
    for (const auto& [gram, count] : cand) {
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) result.matches[n - 1] += std::min(count, it->second);
      result.totals[n - 1] += count;
    }
  }
}

void Finish(BleuResult& result) {
  const double c = static_cast<double>(result.testlen);
  const double r = static_cast<double>(result.reflen);
  result.brevity_penalty = c > r ? 1.0 : std::exp(1.0 - r / c);
  double log_sum = 0.0;
  bool zero = false;
  for (int n = 1; n <= result.max_n; ++n) {
    const uint64_t matches = result.matches[n - 1];
    const uint64_t totals = result.totals[n - 1];
    if (zero || matches == 0 || totals == 0) {
      zero = true;
      result.scores[n - 1] = 0.0;
      continue;
    }
    log_sum += std::log(static_cast<double>(matches) / static_cast<double>(totals));
    result.scores[n - 1] = result.brevity_penalty * std::exp(log_sum / n);
  }
}

void CheckOrder(int max_n) {
  if (max_n < 1 || max_n > kMaxBleuOrder) {
    throw MetricError("BLEU order must be in [1, 4], got " + std::to_string(max_n));
  }
}

}  // namespace

BleuResult Bleu(std::span<const EvalPair> pairs, int max_n) {
  CheckOrder(max_n);
  if (pairs.empty()) throw MetricError("BLEU needs at least one pair");
  BleuResult result;
  result.max_n = max_n;
  for (const EvalPair& pair : pairs) Accumulate(pair, max_n, result);
  if (result.testlen == 0) throw MetricError("BLEU undefined: every candidate is empty");
  Finish(result);
  return result;
}

BleuResult SentenceBleu(const EvalPair& pair, int max_n) {
  CheckOrder(max_n);
  BleuResult result;
  result.max_n = max_n;
  Accumulate(pair, max_n, result);
  if (result.testlen == 0) {
    result.brevity_penalty = 0.0;
    return result;
  }
  Finish(result);
  return result;
}

}  // namespace capharness
