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

#ifndef CAPHARNESS_HARNESS_COMPARE_H_
#define CAPHARNESS_HARNESS_COMPARE_H_

#include <optional>
#include <string>
#include <vector>

#include "capharness/harness/run.h"
#include "json.hpp"

namespace capharness {

struct MetricDelta {
  std::string metric;
  double clean = 0.0;
  double noisy = 0.0;
  double delta = 0.0;            // noisy - clean
  std::optional<double> ratio;   // noisy / clean; empty when clean is 0
};

struct CellComparison {
  std::string dataset;
  std::string condition_id;  // of the noisy cell
  std::string model_id;
  PromptTier prompt_tier = PromptTier::kBasic;
  std::vector<MetricDelta> metrics;
};

struct Comparison {
  std::vector<CellComparison> cells;  // in the noisy result's cell order
  std::vector<std::string> warnings;
};

// Pairs every valid cell of `noisy` with the valid clean-condition cell of
// `clean` that has the same dataset, model and tier. Cells without a
// counterpart, and invalid cells, are left out and named in the warnings.
// Metrics: bleu1..bleu4, meteor, rouge_l, cider, cider_plain, ratio
// (testlen / reflen), and similarity when both sides have it.
Comparison Compare(const RunResult& clean, const RunResult& noisy);

// An undefined ratio is written as null.
void to_json(nlohmann::json& j, const Comparison& c);

}  // namespace capharness

#endif  // CAPHARNESS_HARNESS_COMPARE_H_
