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

#include "capharness/harness/run.h"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <tuple>

#include "capharness/common/file_util.h"
#include "capharness/common/hash.h"
#include "capharness/common/json_util.h"
#include "capharness/corruptions/dataset.h"
#include "capharness/providers/file_provider.h"
#include "capharness/providers/http_provider.h"
#include "capharness/text/normalize.h"

namespace capharness {

namespace fs = std::filesystem;
using nlohmann::json;

double CellResult::Ratio() const { return scores ? scores->Ratio() : 0.0; }

const CellResult* RunResult::Find(std::string_view dataset, std::string_view condition_id,
                                  std::string_view model_id, PromptTier tier) const {
  for (const CellResult& c : cells) {
    if (c.dataset == dataset && c.condition_id == condition_id && c.model_id == model_id &&
        c.prompt_tier == tier) {
      return &c;
    }
  }
  return nullptr;
}

void to_json(json& j, const CellResult& c) {
  j = json{{"key", c.key},
           {"dataset", c.dataset},
           {"condition_id", c.condition_id},
           {"condition", c.condition},
           {"model_id", c.model_id},
           {"prompt_tier", PromptTierName(c.prompt_tier)},
           {"valid", c.valid},
           {"scores", c.scores ? json(*c.scores) : json(nullptr)},
           {"similarity", c.similarity ? json(*c.similarity) : json(nullptr)},
           {"ratio", c.scores ? json(c.Ratio()) : json(nullptr)},
           {"samples_total", c.samples_total},
           {"samples_scored", c.samples_scored},
           {"error_count", c.error_count}};
  if (!c.valid) j["invalid_reason"] = c.invalid_reason;
}

void from_json(const json& j, CellResult& c) {
  c.dataset = j.at("dataset").get<std::string>();
  c.condition_id = j.at("condition_id").get<std::string>();
  c.condition = j.value("condition", json(nullptr));
  c.model_id = j.at("model_id").get<std::string>();
  c.prompt_tier = ParsePromptTier(j.value("prompt_tier", std::string("basic")));
  c.key = j.value("key", CellKey(c.dataset, c.condition_id, c.model_id, c.prompt_tier));
  c.valid = j.value("valid", true);
  c.invalid_reason = j.value("invalid_reason", std::string());
  c.scores.reset();
  if (j.contains("scores") && !j["scores"].is_null()) c.scores = j["scores"].get<CorpusScores>();
  c.similarity.reset();
  if (j.contains("similarity") && !j["similarity"].is_null()) {
    c.similarity = j["similarity"].get<double>();
  }
  c.samples_total = j.value("samples_total", std::size_t{0});
  c.samples_scored = j.value("samples_scored", std::size_t{0});
  c.error_count = j.value("error_count", std::size_t{0});
}

void to_json(json& j, const RunResult& r) {
  j = json{{"name", r.name}, {"run_seed", r.run_seed}, {"cells", r.cells},
           {"run_errors", r.run_errors}};
}

void from_json(const json& j, RunResult& r) {
  r.name = j.value("name", std::string());
  r.run_seed = j.value("run_seed", uint64_t{0});
  r.cells = j.at("cells").get<std::vector<CellResult>>();
  r.run_errors = j.value("run_errors", std::vector<std::string>());
}

void to_json(json& j, const RunError& e) {
  j = json(e.error);
  j["cell"] = e.cell;
}

RunResult LoadRunResult(const fs::path& path) {
  const fs::path file = fs::is_directory(path) ? path / "result.json" : path;
  const json j = json::parse(ReadFileToString(file), nullptr, false);
  if (j.is_discarded()) throw ParseError(file.string(), "not valid JSON");
  try {
    return j.get<RunResult>();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(file.string(), e.what());
  }
}

std::string CellKey(std::string_view dataset, std::string_view condition_id,
                    std::string_view model_id, PromptTier tier) {
  std::string condition(condition_id);
  std::replace(condition.begin(), condition.end(), '/', '-');
  return SanitizeForFilename(dataset) + "__" + SanitizeForFilename(condition) + "__" +
         SanitizeForFilename(model_id) + "__" + std::string(PromptTierName(tier));
}

namespace {

using CaptionKey = std::tuple<std::string, PromptTier, std::string>;

struct LoadedProvider {
  const ProviderConfig* config;
  // dataset -> (sample_id, tier, condition) -> raw caption
  std::map<std::string, std::map<CaptionKey, std::string>> captions;
};

// Captions for one cell: sample_id -> raw text.
struct CellCaptions {
  std::map<std::string, std::string> raw;
  std::vector<SampleError> errors;
};

CellCaptions FileCaptions(const LoadedProvider& provider, const std::string& dataset,
                          const std::vector<CaptionImage>& images, PromptTier tier,
                          const std::string& condition_id) {
  CellCaptions out;
  const auto& table = provider.captions.at(dataset);
  for (const CaptionImage& image : images) {
    auto it = table.find({image.sample_id, tier, condition_id});
    if (it == table.end()) {
      out.errors.push_back({image.sample_id, "caption",
                            "caption file has no entry for tier " +
                                std::string(PromptTierName(tier)) + ", condition '" +
                                condition_id + "'"});
    } else {
      out.raw[image.sample_id] = it->second;
    }
  }
  return out;
}

CellCaptions HttpCaptions(const ProviderConfig& provider, const RunConfig& config,
                          const fs::path& cache_dir, const std::vector<CaptionImage>& images,
                          PromptTier tier, const std::string& condition_id,
                          std::vector<std::string>& run_errors) {
  CellCaptions out;
  const std::string prompt(DefaultPromptTemplate(tier));
  const std::string decoding = DumpJson(json(config.decoding));
  const fs::path dir = cache_dir / "captions";
  std::vector<CaptionImage> pending;
  std::map<std::string, fs::path> cache_files;
  for (const CaptionImage& image : images) {
    std::string digest;
    try {
      digest = Sha256Hex(ReadFileBytes(image.path));
    } catch (const Error& e) {
      out.errors.push_back({image.sample_id, "caption", e.what()});
      continue;
    }
    const std::string key =
        Sha256Hex(digest + '\n' + prompt + '\n' + decoding + '\n' + provider.model_id);
    const fs::path file = dir / (key + ".json");
    cache_files[image.sample_id] = file;
    if (fs::exists(file)) {
      const json cached = json::parse(ReadFileToString(file), nullptr, false);
      if (cached.is_object() && cached.contains("caption") && cached["caption"].is_string()) {
        out.raw[image.sample_id] = cached["caption"].get<std::string>();
        continue;
      }
    }
    pending.push_back(image);
  }
  if (pending.empty()) return out;

  HttpCaptionOptions options;
  options.concurrency = provider.concurrency;
  options.call.timeout = std::chrono::milliseconds(static_cast<int64_t>(provider.timeout_s * 1000));
  options.call.retries = provider.retries;
  HttpCaptionResult result = CaptionsFromHttp(provider.endpoint, pending, tier, config.decoding,
                                              provider.model_id, condition_id, options);
  for (CaptionRecord& r : result.records) {
    WriteFileAtomic(cache_files.at(r.sample_id),
                    DumpJson(json{{"caption", r.raw}, {"model_id", r.model_id},
                                  {"prompt", prompt}}) + "\n");
    out.raw[r.sample_id] = std::move(r.raw);
  }
  for (SampleError& e : result.errors) out.errors.push_back(std::move(e));
  for (const std::string& id : result.missing) {
    out.errors.push_back({id, "caption", "caption service unreachable"});
  }
  if (result.run_error) run_errors.push_back(provider.model_id + ": " + *result.run_error);
  return out;
}

}  // namespace

RunOutput Run(const RunConfig& config, const RunOptions& options) {
  config.Validate();
  const fs::path out_dir = options.output_dir ? *options.output_dir : config.OutputDir();
  const fs::path cache_dir = config.cache_dir.empty() ? out_dir / "cache" : config.CacheDir();
  const std::size_t workers = options.workers ? std::max<std::size_t>(1, *options.workers)
                                              : config.workers;

  // Everything that can fail without doing work fails here.
  std::vector<Manifest> manifests;
  for (const DatasetConfig& d : config.datasets) {
    LoadOptions load;
    load.name = d.name;
    load.images_dir = config.Resolve(d.images_dir);
    try {
      manifests.push_back(LoadManifest(config.Resolve(d.manifest), d.format, load));
    } catch (const Error& e) {
      throw ConfigError("dataset '" + d.name + "': " + e.what());
    }
  }
  std::vector<LoadedProvider> providers;
  for (const ProviderConfig& p : config.providers) {
    LoadedProvider loaded{&p, {}};
    if (p.type == ProviderType::kFile) {
      for (const DatasetConfig& d : config.datasets) {
        auto it = p.paths.find(d.name);
        const fs::path file = config.Resolve(it != p.paths.end() ? it->second : p.path);
        std::vector<CaptionRecord> records;
        try {
          records = CaptionsFromFile(file, p.model_id);
        } catch (const Error& e) {
          throw ConfigError("provider '" + p.model_id + "', dataset '" + d.name + "': " + e.what());
        }
        auto& table = loaded.captions[d.name];
        for (CaptionRecord& r : records) {
          table.emplace(CaptionKey{r.sample_id, r.prompt_tier, r.condition_id}, std::move(r.raw));
        }
      }
    }
    providers.push_back(std::move(loaded));
  }
  std::optional<SynonymTable> synonyms;
  if (!config.synonyms.empty()) {
    try {
      synonyms = SynonymTable::Load(config.Resolve(config.synonyms));
    } catch (const Error& e) {
      throw ConfigError(std::string("synonyms: ") + e.what());
    }
  }
  std::unique_ptr<EmbeddingProvider> embedder = MakeEmbedder(config.embedder);

  fs::create_directories(out_dir);
  fs::remove_all(out_dir / "cells");
  WriteFileAtomic(out_dir / "config.lock.json", DumpJson(RunConfigToJson(config), 2) + "\n");

  ScoreOptions score_options;
  score_options.meteor.synonyms = synonyms ? &*synonyms : nullptr;
  score_options.workers = workers;

  RunOutput output;
  output.output_dir = out_dir;
  RunResult& result = output.result;
  result.name = config.name;
  result.run_seed = config.run_seed;
  std::set<std::string> keys;

  for (std::size_t di = 0; di < config.datasets.size(); ++di) {
    const DatasetConfig& dataset = config.datasets[di];
    const Manifest& manifest = manifests[di];
    std::map<std::string, const Sample*> by_id;
    for (const Sample& s : manifest.samples) by_id[s.sample_id] = &s;

    for (const ConditionConfig& condition : config.conditions) {
      const std::string condition_id = condition.Id();
      std::vector<CaptionImage> images;
      std::vector<SampleError> corrupt_errors;
      if (!condition.plan) {
        for (const Sample& s : manifest.samples) {
          images.push_back({s.sample_id, manifest.ResolveImage(s)});
        }
      } else {
        CorruptDatasetOptions corrupt_options;
        corrupt_options.run_seed = config.run_seed;
        corrupt_options.condition_id = condition_id;
        corrupt_options.workers = workers;
        CorruptDatasetResult corrupted =
            CorruptDataset(manifest, *condition.plan,
                           cache_dir / "images" / SanitizeForFilename(dataset.name),
                           corrupt_options);
        for (const Sample& s : corrupted.manifest.samples) {
          images.push_back({s.sample_id, corrupted.manifest.ResolveImage(s)});
        }
        corrupt_errors = std::move(corrupted.errors);
      }

      for (const LoadedProvider& provider : providers) {
        for (PromptTier tier : config.prompt_tiers) {
          CellResult cell;
          cell.dataset = dataset.name;
          cell.condition_id = condition_id;
          cell.condition = condition.plan ? PlanToJson(*condition.plan) : json(nullptr);
          cell.model_id = provider.config->model_id;
          cell.prompt_tier = tier;
          cell.key = CellKey(cell.dataset, condition_id, cell.model_id, tier);
          if (!keys.insert(cell.key).second) {
            throw ConfigError("two cells map to the directory name '" + cell.key + "'");
          }
          cell.samples_total = manifest.samples.size();

          CellCaptions captions =
              provider.config->type == ProviderType::kFile
                  ? FileCaptions(provider, dataset.name, images, tier, condition_id)
                  : HttpCaptions(*provider.config, config, cache_dir, images, tier, condition_id,
                                 result.run_errors);
          std::vector<SampleError> errors = corrupt_errors;
          errors.insert(errors.end(), captions.errors.begin(), captions.errors.end());

          std::vector<EvalPair> pairs;
          std::map<std::string, std::string> normalized;
          for (const Sample& s : manifest.samples) {
            auto it = captions.raw.find(s.sample_id);
            if (it == captions.raw.end()) continue;
            normalized[s.sample_id] = NormalizeCaption(it->second);
            pairs.push_back(MakeEvalPair(s.sample_id, normalized[s.sample_id], s.references));
          }
          cell.samples_scored = pairs.size();
          const std::size_t failed = cell.samples_total - cell.samples_scored;
          const double limit = config.invalid_failure_fraction * static_cast<double>(cell.samples_total);

          std::optional<CorpusEvaluation> evaluation;
          std::optional<SimilarityResult> similarity;
          if (pairs.empty()) {
            cell.invalid_reason = "no sample was scored";
          } else if (static_cast<double>(failed) > limit) {
            cell.invalid_reason = std::to_string(failed) + " of " +
                                  std::to_string(cell.samples_total) +
                                  " samples failed, above the invalid_failure_fraction of " +
                                  FormatNumber(config.invalid_failure_fraction);
          } else {
            try {
              evaluation = ScoreCorpus(pairs, score_options);
            } catch (const MetricError& e) {
              cell.invalid_reason = e.what();
            }
          }
          if (evaluation) {
            cell.valid = true;
            cell.scores = evaluation->corpus;
            std::vector<SimilarityInput> inputs;
            inputs.reserve(pairs.size());
            for (const EvalPair& p : pairs) {
              SimilarityInput in{p.sample_id, p.candidate.Join(), {}};
              for (const TokenSeq& r : p.references) in.references.push_back(r.Join());
              inputs.push_back(std::move(in));
            }
            try {
              similarity = SimilarityCorpus(inputs, *embedder, config.similarity_reduction);
              cell.similarity = similarity->score;
            } catch (const ProviderError& e) {
              errors.push_back({"", "similarity", e.what()});
            }
          }
          cell.samples_scored = cell.valid ? pairs.size() : 0;
          cell.error_count = errors.size();

          const fs::path cell_dir = out_dir / "cells" / cell.key;
          WriteFileAtomic(cell_dir / "scores.json", DumpJson(json(cell), 2) + "\n");
          std::string lines;
          std::size_t scored_index = 0;
          for (const Sample& s : manifest.samples) {
            json line = {{"sample_id", s.sample_id}};
            auto it = captions.raw.find(s.sample_id);
            if (it == captions.raw.end()) {
              line["status"] = "failed";
            } else {
              line["status"] = "captioned";
              line["caption"] = it->second;
              line["normalized"] = normalized.at(s.sample_id);
              if (evaluation) {
                line["status"] = "scored";
                json scores = evaluation->samples[scored_index];
                scores.erase("sample_id");
                line["scores"] = std::move(scores);
                line["similarity"] =
                    similarity ? json(similarity->per_pair[scored_index]) : json(nullptr);
              }
              ++scored_index;
            }
            lines += DumpJson(line) + "\n";
          }
          WriteFileAtomic(cell_dir / "per_sample.jsonl", lines);

          for (SampleError& e : errors) output.errors.push_back({cell.key, std::move(e)});
          result.cells.push_back(std::move(cell));
        }
      }
    }
  }

  std::string error_lines;
  for (const RunError& e : output.errors) error_lines += DumpJson(json(e)) + "\n";
  WriteFileAtomic(out_dir / "errors.jsonl", error_lines);
  WriteFileAtomic(out_dir / "result.json", DumpJson(json(result), 2) + "\n");
  return output;
}

}  // namespace capharness
