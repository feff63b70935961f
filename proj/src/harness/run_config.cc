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

#include "capharness/harness/run_config.h"

#include <cmath>
#include <set>

#include "capharness/common/errors.h"
#include "capharness/common/file_util.h"

namespace capharness {

namespace fs = std::filesystem;
using nlohmann::json;

std::string ConditionConfig::Id() const {
  return plan ? PlanId(*plan) : std::string(kCleanCondition);
}

fs::path RunConfig::Resolve(const fs::path& p) const {
  if (p.empty() || p.is_absolute() || base_dir.empty()) return p;
  return base_dir / p;
}

fs::path RunConfig::CacheDir() const {
  return cache_dir.empty() ? OutputDir() / "cache" : Resolve(cache_dir);
}

void RunConfig::Validate() const {
  if (name.empty()) throw ConfigError("run name must not be empty");
  if (output_dir.empty()) throw ConfigError("output_dir is required");
  if (datasets.empty()) throw ConfigError("at least one dataset is required");
  if (conditions.empty()) throw ConfigError("at least one condition is required");
  if (providers.empty()) throw ConfigError("at least one provider is required");
  if (prompt_tiers.empty()) throw ConfigError("at least one prompt tier is required");
  if (!(invalid_failure_fraction >= 0.0 && invalid_failure_fraction <= 1.0)) {
    throw ConfigError("invalid_failure_fraction must lie in [0, 1]");
  }
  if (workers == 0) throw ConfigError("workers must be at least 1");
  try {
    decoding.Validate();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  if (embedder != "builtin" && embedder.rfind("http:", 0) != 0) {
    throw ConfigError("embedder must be builtin or http:<url>, got '" + embedder + "'");
  }
  if (embedder != "builtin") ParseHttpEndpoint(embedder.substr(5));

  std::set<std::string> names;
  for (const DatasetConfig& d : datasets) {
    if (d.name.empty()) throw ConfigError("dataset with empty name");
    if (!names.insert(d.name).second) throw ConfigError("duplicate dataset '" + d.name + "'");
    if (d.manifest.empty()) throw ConfigError("dataset '" + d.name + "' has no manifest");
  }
  std::set<std::string> condition_ids;
  for (const ConditionConfig& c : conditions) {
    if (!condition_ids.insert(c.Id()).second) {
      throw ConfigError("duplicate condition '" + c.Id() + "'");
    }
  }
  std::set<std::string> models;
  for (const ProviderConfig& p : providers) {
    if (p.model_id.empty()) throw ConfigError("provider with empty model_id");
    if (!models.insert(p.model_id).second) {
      throw ConfigError("duplicate model_id '" + p.model_id + "'");
    }
    if (p.type == ProviderType::kFile) {
      for (const DatasetConfig& d : datasets) {
        if (p.path.empty() && !p.paths.contains(d.name)) {
          throw ConfigError("file provider '" + p.model_id + "' has no caption file for dataset '" +
                            d.name + "'");
        }
      }
      for (const auto& [dataset, file] : p.paths) {
        if (!names.contains(dataset)) {
          throw ConfigError("file provider '" + p.model_id + "' names unknown dataset '" +
                            dataset + "'");
        }
      }
    } else {
      ParseHttpEndpoint(p.endpoint);
      if (p.concurrency == 0) throw ConfigError("provider concurrency must be at least 1");
      if (!(p.timeout_s > 0.0) || !std::isfinite(p.timeout_s)) {
        throw ConfigError("provider timeout_s must be positive");
      }
      if (p.retries < 0) throw ConfigError("provider retries must be >= 0");
    }
  }
  std::set<PromptTier> tiers;
  for (PromptTier t : prompt_tiers) {
    if (!tiers.insert(t).second) {
      throw ConfigError("duplicate prompt tier '" + std::string(PromptTierName(t)) + "'");
    }
  }
}

namespace {

void RejectUnknown(const json& j, std::initializer_list<std::string_view> known,
                   const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (std::string_view k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

ConditionConfig ParseCondition(const json& j, std::size_t index) {
  const std::string where = "conditions[" + std::to_string(index) + "]";
  ConditionConfig c;
  try {
    if (j.is_string()) {
      const std::string s = j.get<std::string>();
      if (s == kCleanCondition) return c;
      const std::size_t slash = s.find('/');
      if (slash == std::string::npos) {
        throw ConfigError(where + ": expected \"clean\" or \"kind/level\", got '" + s + "'");
      }
      c.plan = CorruptionSpec::Resolve(ParseKind(s.substr(0, slash)),
                                       ParseSeverity(s.substr(slash + 1)));
      return c;
    }
    c.plan = PlanFromJson(j);
    return c;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

ProviderConfig ParseProvider(const json& j, std::size_t index) {
  const std::string where = "providers[" + std::to_string(index) + "]";
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  RejectUnknown(j, {"model_id", "type", "path", "paths", "endpoint", "concurrency", "timeout_s",
                    "retries"},
                where);
  ProviderConfig p;
  p.model_id = j.at("model_id").get<std::string>();
  const std::string type = j.value("type", std::string("file"));
  if (type == "file") {
    p.type = ProviderType::kFile;
    if (j.contains("path")) p.path = j["path"].get<std::string>();
    if (j.contains("paths")) {
      for (const auto& [dataset, file] : j["paths"].items()) p.paths[dataset] = file.get<std::string>();
    }
  } else if (type == "http") {
    p.type = ProviderType::kHttp;
    p.endpoint = j.at("endpoint").get<std::string>();
    p.concurrency = j.value("concurrency", p.concurrency);
    p.timeout_s = j.value("timeout_s", p.timeout_s);
    p.retries = j.value("retries", p.retries);
  } else {
    throw ConfigError(where + ": type must be file or http, got '" + type + "'");
  }
  return p;
}

}  // namespace

RunConfig ParseRunConfig(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw ConfigError("run config must be a JSON object");
  RejectUnknown(j, {"name", "run_seed", "output_dir", "cache_dir", "datasets", "conditions",
                    "providers", "prompt_tiers", "decoding", "embedder", "similarity_reduction",
                    "invalid_failure_fraction", "workers", "synonyms"},
                "run config");
  RunConfig c;
  c.base_dir = base_dir;
  try {
    c.name = j.value("name", c.name);
    c.run_seed = j.value("run_seed", c.run_seed);
    c.output_dir = j.value("output_dir", std::string());
    c.cache_dir = j.value("cache_dir", std::string());
    for (const json& d : j.at("datasets")) {
      RejectUnknown(d, {"name", "manifest", "format", "images_dir"}, "datasets[]");
      DatasetConfig dc;
      dc.manifest = d.at("manifest").get<std::string>();
      dc.name = d.value("name", dc.manifest.stem().string());
      dc.format = ParseManifestFormat(d.value("format", std::string("native_jsonl")));
      dc.images_dir = d.value("images_dir", std::string());
      c.datasets.push_back(std::move(dc));
    }
    const json conditions = j.value("conditions", json::array({"clean"}));
    for (std::size_t i = 0; i < conditions.size(); ++i) {
      c.conditions.push_back(ParseCondition(conditions[i], i));
    }
    const json& providers = j.at("providers");
    for (std::size_t i = 0; i < providers.size(); ++i) {
      c.providers.push_back(ParseProvider(providers[i], i));
    }
    for (const json& t : j.value("prompt_tiers", json::array({"basic"}))) {
      c.prompt_tiers.push_back(ParsePromptTier(t.get<std::string>()));
    }
    if (j.contains("decoding")) c.decoding = j["decoding"].get<DecodingParams>();
    c.embedder = j.value("embedder", c.embedder);
    c.similarity_reduction =
        ParseSimilarityReduction(j.value("similarity_reduction", std::string("max")));
    c.invalid_failure_fraction = j.value("invalid_failure_fraction", c.invalid_failure_fraction);
    c.workers = j.value("workers", c.workers);
    c.synonyms = j.value("synonyms", std::string());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("run config: ") + e.what());
  }
  c.Validate();
  return c;
}

RunConfig LoadRunConfig(const fs::path& path) {
  const json j = json::parse(ReadFileToString(path), nullptr, false);
  if (j.is_discarded()) throw ConfigError(path.string() + " is not valid JSON");
  return ParseRunConfig(j, path.parent_path());
}

json RunConfigToJson(const RunConfig& c) {
  json j;
  j["name"] = c.name;
  j["run_seed"] = c.run_seed;
  j["output_dir"] = c.output_dir.generic_string();
  if (!c.cache_dir.empty()) j["cache_dir"] = c.cache_dir.generic_string();
  j["datasets"] = json::array();
  for (const DatasetConfig& d : c.datasets) {
    json dj = {{"name", d.name},
               {"manifest", d.manifest.generic_string()},
               {"format", ManifestFormatName(d.format)}};
    if (!d.images_dir.empty()) dj["images_dir"] = d.images_dir.generic_string();
    j["datasets"].push_back(std::move(dj));
  }
  j["conditions"] = json::array();
  for (const ConditionConfig& cond : c.conditions) {
    j["conditions"].push_back(cond.plan ? PlanToJson(*cond.plan) : json(kCleanCondition));
  }
  j["providers"] = json::array();
  for (const ProviderConfig& p : c.providers) {
    json pj = {{"model_id", p.model_id}};
    if (p.type == ProviderType::kFile) {
      pj["type"] = "file";
      if (!p.path.empty()) pj["path"] = p.path.generic_string();
      if (!p.paths.empty()) {
        pj["paths"] = json::object();
        for (const auto& [dataset, file] : p.paths) pj["paths"][dataset] = file.generic_string();
      }
    } else {
      pj["type"] = "http";
      pj["endpoint"] = p.endpoint;
      pj["concurrency"] = p.concurrency;
      pj["timeout_s"] = p.timeout_s;
      pj["retries"] = p.retries;
    }
    j["providers"].push_back(std::move(pj));
  }
  j["prompt_tiers"] = json::array();
  for (PromptTier t : c.prompt_tiers) j["prompt_tiers"].push_back(PromptTierName(t));
  j["decoding"] = c.decoding;
  j["embedder"] = c.embedder;
  j["similarity_reduction"] = SimilarityReductionName(c.similarity_reduction);
  j["invalid_failure_fraction"] = c.invalid_failure_fraction;
  j["workers"] = c.workers;
  if (!c.synonyms.empty()) j["synonyms"] = c.synonyms.generic_string();
  return j;
}

}  // namespace capharness
