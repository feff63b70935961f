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

#ifndef CAPHARNESS_HARNESS_RUN_H_
#define CAPHARNESS_HARNESS_RUN_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "capharness/common/errors.h"
#include "capharness/harness/run_config.h"
#include "capharness/metrics/corpus.h"
#include "json.hpp"

namespace capharness {

// One (dataset, condition, model, tier) combination.
struct CellResult {
  std::string key;  // directory name under cells/
  std::string dataset;
  std::string condition_id;
  // The condition's plan as JSON; null for clean.
  nlohmann::json condition = nullptr;
  std::string model_id;
  PromptTier prompt_tier = PromptTier::kBasic;

  bool valid = false;
  std::string invalid_reason;
  // Present when valid.
  std::optional<CorpusScores> scores;
  // Absent when the embedder failed for this cell.
  std::optional<double> similarity;

  std::size_t samples_total = 0;
  std::size_t samples_scored = 0;
  std::size_t error_count = 0;

  bool IsClean() const { return condition.is_null(); }
  // testlen / reflen of the scores, 0 without scores.
  double Ratio() const;
};

// A per-sample failure located in its cell.
struct RunError {
  std::string cell;  // CellResult::key, or "" for errors not tied to a cell
  SampleError error;
};

struct RunResult {
  std::string name;
  uint64_t run_seed = 0;
  std::vector<CellResult> cells;  // datasets x conditions x providers x tiers
  // Run-level problems, e.g. an unreachable caption service.
  std::vector<std::string> run_errors;

  const CellResult* Find(std::string_view dataset, std::string_view condition_id,
                         std::string_view model_id, PromptTier tier) const;
};

void to_json(nlohmann::json& j, const CellResult& c);
void from_json(const nlohmann::json& j, CellResult& c);
void to_json(nlohmann::json& j, const RunResult& r);
void from_json(const nlohmann::json& j, RunResult& r);
void to_json(nlohmann::json& j, const RunError& e);

// Reads <dir>/result.json, or the file itself when given one. Throws
// ParseError.
RunResult LoadRunResult(const std::filesystem::path& path);

// "<dataset>__<condition>__<model>__<tier>" made filename-safe, with '/' in
// the condition written as '-'.
std::string CellKey(std::string_view dataset, std::string_view condition_id,
                    std::string_view model_id, PromptTier tier);

struct RunOptions {
  // Replaces config.output_dir (and the default cache under it). Not
  // written to config.lock.json.
  std::optional<std::filesystem::path> output_dir;
  std::optional<std::size_t> workers;
};

struct RunOutput {
  RunResult result;
  std::vector<RunError> errors;
  std::filesystem::path output_dir;
};

// Runs the whole pipeline and writes, under the output directory:
//   config.lock.json                  the canonical config
//   cells/<key>/scores.json           one CellResult
//   cells/<key>/per_sample.jsonl      captions and per-sample scores
//   errors.jsonl                      every RunError, in cell order
//   result.json                       the RunResult
// plus cache/ (corrupted images, remote captions) unless cache_dir points
// elsewhere. Nothing written depends on timing, so equal inputs give
// byte-identical trees.
//
// Throws ConfigError for problems found before work starts (unreadable
// manifests or caption files, bad synonym table) and for an embedder whose
// dimension changes mid-run.
RunOutput Run(const RunConfig& config, const RunOptions& options = {});

}  // namespace capharness

#endif  // CAPHARNESS_HARNESS_RUN_H_
