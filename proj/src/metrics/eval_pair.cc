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

#include "capharness/metrics/eval_pair.h"

#include <algorithm>

#include "capharness/common/errors.h"

namespace capharness {

EvalPair MakeEvalPair(std::string sample_id, std::string_view candidate,
                      std::span<const std::string> references) {
  if (references.empty()) {
    throw MetricError("sample '" + sample_id + "' has no references");
  }
  EvalPair pair{std::move(sample_id), Tokenize(candidate), {}};
  pair.references.reserve(references.size());
  for (const std::string& r : references) pair.references.push_back(Tokenize(r));
  return pair;
}

double OrderIndependentMean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double v : sorted) sum += v;
  return sum / static_cast<double>(sorted.size());
}

}  // namespace capharness
