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

#ifndef CAPHARNESS_METRICS_ROUGE_H_
#define CAPHARNESS_METRICS_ROUGE_H_

#include <cstddef>
#include <span>

#include "capharness/metrics/eval_pair.h"
#include "capharness/text/tokenizer.h"

namespace capharness {

inline constexpr double kRougeBeta = 1.2;

std::size_t LcsLength(const TokenSeq& a, const TokenSeq& b);

// F = (1 + b^2) P R / (R + b^2 P) with P = LCS/|candidate|, R = LCS/|reference|.
// 0 when the LCS is empty.
double RougeLScore(const TokenSeq& candidate, const TokenSeq& reference,
                   double beta = kRougeBeta);

// Best F over the pair's references.
double SentenceRougeL(const EvalPair& pair, double beta = kRougeBeta);

// Mean of SentenceRougeL. Throws MetricError when empty.
double RougeL(std::span<const EvalPair> pairs, double beta = kRougeBeta);

}  // namespace capharness

#endif  // CAPHARNESS_METRICS_ROUGE_H_
