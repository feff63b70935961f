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

#ifndef CAPHARNESS_METRICS_EVAL_PAIR_H_
#define CAPHARNESS_METRICS_EVAL_PAIR_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "capharness/text/tokenizer.h"

namespace capharness {

// One candidate caption with its references, tokenized.
struct EvalPair {
  std::string sample_id;
  TokenSeq candidate;
  std::vector<TokenSeq> references;
};

// Tokenizes with the shared tokenizer. Throws MetricError when
// `references` is empty.
EvalPair MakeEvalPair(std::string sample_id, std::string_view candidate,
                      std::span<const std::string> references);

// Sorts a copy before summing, so the result does not depend on the order
// of `values`. Returns 0 for an empty span.
double OrderIndependentMean(std::span<const double> values);

}  // namespace capharness

#endif  // CAPHARNESS_METRICS_EVAL_PAIR_H_
