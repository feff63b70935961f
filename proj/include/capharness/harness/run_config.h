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

#ifndef CAPHARNESS_HARNESS_RUN_CONFIG_H_
#define CAPHARNESS_HARNESS_RUN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "capharness/corruptions/corrupt.h"
#include "capharness/datasets/manifest.h"
#include "capharness/providers/caption_record.h"
#include "capharness/providers/decoding.h"
#include "capharness/semantic/embedding.h"
#include "json.hpp"

namespace capharness {

struct DatasetConfig {
  std::string name;
  std::filesystem::path manifest;
  ManifestFormat format = ManifestFormat::kNativeJsonl;
  std::filesystem::path images_dir;  // empty: next to the manifest
};

// "clean" when plan is empty.
struct ConditionConfig {
  std::optional<CorruptionPlan> plan;

  std::string Id() const;
};

enum class ProviderType { kFile, kHttp };

struct ProviderConfig {
  std::string model_id;
  ProviderType type = ProviderType::kFile;
  // kFile: one caption file for every dataset ("path"), or one per dataset
  // name ("paths"). A per-dataset entry wins.
  std::filesystem::path path;
  std::map<std::string, std::filesystem::path> paths;
  // kHttp
  std::string endpoint;
  std::size_t concurrency = 4;
  double timeout_s = 60.0;
  int retries = 2;
};

// Everything a run needs. Paths are kept as written and resolved against
// base_dir (the config file's directory) when used.
struct RunConfig {
  std::string name = "run";
  uint64_t run_seed = 0;
  std::filesystem::path output_dir;
  std::filesystem::path cache_dir;  // empty: <output_dir>/cache
  std::vector<DatasetConfig> datasets;
  std::vector<ConditionConfig> conditions;
  std::vector<ProviderConfig> providers;
  std::vector<PromptTier> prompt_tiers;
  DecodingParams decoding;
  std::string embedder = "builtin";
  SimilarityReduction similarity_reduction = SimilarityReduction::kMax;
  // A cell whose failed share of samples exceeds this is marked invalid.
  double invalid_failure_fraction = 0.5;
  std::size_t workers = 1;
  std::filesystem::path synonyms;  // empty: no synonym stage

  // Not serialized.
  std::filesystem::path base_dir;

  std::filesystem::path Resolve(const std::filesystem::path& p) const;
  std::filesystem::path OutputDir() const { return Resolve(output_dir); }
  std::filesystem::path CacheDir() const;

  // Checks everything that can be checked without touching the network.
  // Throws ConfigError.
  void Validate() const;
};

// Parses and validates. Unknown keys are rejected. Throws ConfigError.
RunConfig ParseRunConfig(const nlohmann::json& j, const std::filesystem::path& base_dir);
RunConfig LoadRunConfig(const std::filesystem::path& path);

// Canonical form, with every condition's parameters fully resolved.
// Serializing the parse of this output gives the same output.
nlohmann::json RunConfigToJson(const RunConfig& config);

}  // namespace capharness

#endif  // CAPHARNESS_HARNESS_RUN_CONFIG_H_
