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

#include "capharness/metrics/cider.h"

#include <array>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "capharness/common/errors.h"
#include "capharness/common/parallel.h"

namespace capharness {
namespace {

constexpr int kOrders = 4;

// Ordered so that every sum below runs in the same order on every run.
using Counts = std::map<std::string, double>;
using OrderCounts = std::array<Counts, kOrders>;

OrderCounts CountAll(const TokenSeq& tokens) {
  OrderCounts out;
  for (int n = 1; n <= kOrders; ++n) {
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      std::string key = tokens[i];
      for (int k = 1; k < n; ++k) {
        key += ' ';
        key += tokens[i + k];
      }
      out[n - 1][key] += 1.0;
    }
  }
  return out;
}

struct Weighted {
  Counts vec;
  double norm = 0.0;
};

Weighted Weigh(const Counts& counts, const std::map<std::string, double>& df, double log_n) {
  Weighted w;
  double sq = 0.0;
  for (const auto& [gram, tf] : counts) {
    auto it = df.find(gram);
    const double d = it == df.end() ? 1.0 : std::max(1.0, it->second);
    const double v = tf * (log_n - std::log(d));
    w.vec.emplace(gram, v);
    sq += v * v;
  }
  w.norm = std::sqrt(sq);
  return w;
}

double Similarity(const Weighted& cand, const Weighted& ref, CiderVariant variant) {
  if (cand.norm == 0.0 || ref.norm == 0.0) return 0.0;
  double dot = 0.0;
  for (const auto& [gram, v] : cand.vec) {
    auto it = ref.vec.find(gram);
    if (it == ref.vec.end()) continue;
    dot += variant == CiderVariant::kD ? std::min(v, it->second) * it->second : v * it->second;
  }
  return dot / (cand.norm * ref.norm);
}

}  // namespace

std::string_view CiderVariantName(CiderVariant variant) {
  return variant == CiderVariant::kPlain ? "plain" : "d";
}

CiderVariant ParseCiderVariant(std::string_view name) {
  if (name == "plain") return CiderVariant::kPlain;
  if (name == "d") return CiderVariant::kD;
  throw ConfigError("unknown CIDEr variant '" + std::string(name) + "' (expected plain or d)");
}

CiderResult Cider(std::span<const EvalPair> pairs, const CiderOptions& options) {
  if (pairs.empty()) throw MetricError("CIDEr needs at least one pair");
  const std::size_t n_docs = pairs.size();

  std::vector<OrderCounts> cand_counts(n_docs);
  std::vector<std::vector<OrderCounts>> ref_counts(n_docs);
  ParallelFor(n_docs, options.workers, [&](std::size_t i) {
    if (pairs[i].references.empty()) {
      throw MetricError("sample '" + pairs[i].sample_id + "' has no references");
    }
    cand_counts[i] = CountAll(pairs[i].candidate);
    for (const TokenSeq& ref : pairs[i].references) ref_counts[i].push_back(CountAll(ref));
  });

  std::map<std::string, double> df;
  for (std::size_t i = 0; i < n_docs; ++i) {
    std::set<std::string> seen;
    for (const OrderCounts& rc : ref_counts[i]) {
      for (const Counts& c : rc) {
        for (const auto& entry : c) seen.insert(entry.first);
      }
    }
    for (const std::string& gram : seen) df[gram] += 1.0;
  }
  const double log_n = std::log(static_cast<double>(n_docs));

  CiderResult result;
  result.per_pair.assign(n_docs, 0.0);
  ParallelFor(n_docs, options.workers, [&](std::size_t i) {
    const EvalPair& pair = pairs[i];
    double total = 0.0;
    for (int n = 0; n < kOrders; ++n) {
      const Weighted cand = Weigh(cand_counts[i][n], df, log_n);
      double sum = 0.0;
      for (std::size_t r = 0; r < pair.references.size(); ++r) {
        const Weighted ref = Weigh(ref_counts[i][r][n], df, log_n);
        double s = Similarity(cand, ref, options.variant);
        if (options.variant == CiderVariant::kD) {
          const double delta = static_cast<double>(pair.candidate.size()) -
                               static_cast<double>(pair.references[r].size());
          s *= std::exp(-(delta * delta) / (2.0 * options.sigma * options.sigma));
        }
        sum += s;
      }
      total += sum / static_cast<double>(pair.references.size());
    }
    double score = total / kOrders;
    if (options.variant == CiderVariant::kD) score *= 10.0;
    result.per_pair[i] = score;
  });
  result.score = OrderIndependentMean(result.per_pair);
  return result;
}

}  // namespace capharness
