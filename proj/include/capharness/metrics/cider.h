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

#ifndef CAPHARNESS_METRICS_CIDER_H_
#define CAPHARNESS_METRICS_CIDER_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "capharness/metrics/eval_pair.h"

namespace capharness {

enum class CiderVariant {
  kPlain,  // mean over n of the mean TF-IDF cosine to each reference
  kD,      // clipped counts, gaussian length penalty, scaled by 10
};

std::string_view CiderVariantName(CiderVariant variant);
// Accepts "plain" and "d". Throws ConfigError otherwise.
CiderVariant ParseCiderVariant(std::string_view name);

struct CiderOptions {
  CiderVariant variant = CiderVariant::kD;
  // Length penalty width, in tokens (kD only).
  double sigma = 6.0;
  std::size_t workers = 1;
};

struct CiderResult {
  double score = 0.0;
  std::vector<double> per_pair;
};

// Document frequencies come from this corpus: each pair is one document
// made of the n-grams of all its references. IDF = ln(N / max(1, df)), so a
// one-pair corpus scores 0. Throws MetricError for an empty corpus.
CiderResult Cider(std::span<const EvalPair> pairs, const CiderOptions& options = {});

}  // namespace capharness

#endif  // CAPHARNESS_METRICS_CIDER_H_
