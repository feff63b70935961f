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

#ifndef CAPHARNESS_REPORT_TABLES_H_
#define CAPHARNESS_REPORT_TABLES_H_

#include <string>
#include <string_view>
#include <vector>

#include "capharness/corruptions/corruption_spec.h"
#include "capharness/harness/compare.h"
#include "capharness/harness/run.h"

namespace capharness {

enum class TableFormat { kMarkdown, kCsv };

// "markdown" / "md" or "csv". Throws ConfigError.
TableFormat ParseTableFormat(std::string_view name);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Markdown pipes ('|' escaped) or RFC 4180 CSV; LF line endings.
std::string RenderTable(const Table& table, TableFormat format);

// Title-case names for report rows, e.g. "Gaussian Noise", "Adversarial".
std::string_view NoiseDisplayName(CorruptionKind kind);
std::string_view LevelDisplayName(Severity level);

// Clean cells in result order. Columns: Dataset, Model, BLEU-1..4, METEOR,
// ROUGE_L, CIDEr (the d variant), testlen, reflen, similarity. Scores at
// four decimals; "n/a" where a value is missing. The model is qualified
// with the prompt tier when the result holds more than one tier. A result
// without cells gives a header-only table; cells but no clean one throw
// Error.
Table BuildTable1(const RunResult& result);

// Corrupted cells sorted by noise type name, then level name, model, tier
// and dataset, all alphabetically. Columns: Noise Type, Level, Model,
// Ratio (three decimals), BLEU-1..4, METEOR, ROUGE-L, CIDEr, Similarity.
// The model is qualified with dataset and tier when the corrupted cells
// span more than one of either. Overridden parameters follow the noise
// type in brackets; a mixture lists its steps joined by " + ". Same empty
// and error rules as BuildTable1.
Table BuildTable2(const RunResult& result);

// One row per compared cell and metric: Dataset, Condition, Model, Tier,
// Metric, Clean, Noisy, Delta, Ratio ("n/a" when undefined).
Table BuildComparisonTable(const Comparison& comparison);

}  // namespace capharness

#endif  // CAPHARNESS_REPORT_TABLES_H_
