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

// Command-line front end.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "capharness/common/errors.h"
#include "capharness/common/file_util.h"
#include "capharness/common/json_util.h"
#include "capharness/corruptions/corrupt.h"
#include "capharness/corruptions/dataset.h"
#include "capharness/datasets/manifest.h"
#include "capharness/harness/compare.h"
#include "capharness/harness/run.h"
#include "capharness/harness/run_config.h"
#include "capharness/metrics/corpus.h"
#include "capharness/providers/file_provider.h"
#include "capharness/providers/http_provider.h"
#include "capharness/report/histogram.h"
#include "capharness/report/tables.h"
#include "capharness/semantic/embedding.h"
#include "capharness/text/normalize.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace capharness {
namespace {

void Emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    WriteFileAtomic(out, text);
  }
}

// One format for every manifest, or one per manifest in order.
std::vector<LengthStats> LoadLengthStats(const std::vector<std::string>& manifests,
                                         const std::vector<std::string>& formats) {
  if (formats.size() > 1 && formats.size() != manifests.size()) {
    throw ConfigError("give one format, or one per manifest");
  }
  std::vector<LengthStats> stats;
  for (std::size_t i = 0; i < manifests.size(); ++i) {
    const std::string& f = formats.empty() ? "native_jsonl" : formats[formats.size() == 1 ? 0 : i];
    stats.push_back(CaptionLengthStats(LoadManifest(manifests[i], ParseManifestFormat(f))));
  }
  return stats;
}

std::string ErrorsJsonl(const std::vector<SampleError>& errors) {
  std::string out;
  for (const SampleError& e : errors) out += DumpJson(json(e)) + "\n";
  return out;
}

struct CorruptArgs {
  std::string manifest;
  std::string format = "native_jsonl";
  std::string kind;
  std::string level = "medium";
  std::vector<std::string> params;
  std::string mixture;
  uint64_t seed = 0;
  std::string out;
  std::size_t workers = 1;
};

int RunCorrupt(const CorruptArgs& a) {
  CorruptionPlan plan;
  if (!a.mixture.empty()) {
    const json j = json::parse(ReadFileToString(a.mixture), nullptr, false);
    if (j.is_discarded()) throw ConfigError(a.mixture + " is not valid JSON");
    plan = PlanFromJson(j);
  } else {
    if (a.kind.empty()) throw ConfigError("give --kind or --mixture");
    ParamMap overrides;
    for (const std::string& p : a.params) {
      const std::size_t eq = p.find('=');
      if (eq == std::string::npos) throw ConfigError("--param expects name=value, got '" + p + "'");
      std::size_t used = 0;
      double value = 0;
      try {
        value = std::stod(p.substr(eq + 1), &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != p.size() - eq - 1) {
        throw ConfigError("--param value for '" + p.substr(0, eq) + "' is not a number");
      }
      overrides[p.substr(0, eq)] = value;
    }
    plan = CorruptionSpec::Resolve(ParseKind(a.kind), ParseSeverity(a.level), overrides);
  }
  const Manifest manifest = LoadManifest(a.manifest, ParseManifestFormat(a.format));
  CorruptDatasetOptions options;
  options.run_seed = a.seed;
  options.workers = a.workers;
  const CorruptDatasetResult result = CorruptDataset(manifest, plan, a.out, options);
  SaveManifest(fs::path(a.out) / "manifest.jsonl", result.manifest);
  WriteFileAtomic(fs::path(a.out) / "errors.jsonl", ErrorsJsonl(result.errors));
  std::cout << PlanId(plan) << ": " << result.manifest.samples.size() << " written, "
            << result.errors.size() << " failed\n";
  for (const SampleError& e : result.errors) {
    std::cerr << "error: " << e.sample_id << ": " << e.message << "\n";
  }
  return 0;
}

struct ManifestArgs {
  std::string in;
  std::string from = "native_jsonl";
  std::string images_dir;
  std::string name;
  std::string out;
  std::vector<std::string> manifests;
  std::vector<std::string> formats;
  std::string histogram;
};

int RunManifestConvert(const ManifestArgs& a) {
  LoadOptions options;
  options.images_dir = a.images_dir;
  options.name = a.name;
  Manifest m = LoadManifest(a.in, ParseManifestFormat(a.from), options);
  Emit(SerializeManifest(m), a.out);
  return 0;
}

int RunManifestStats(const ManifestArgs& a) {
  const std::vector<LengthStats> stats = LoadLengthStats(a.manifests, a.formats);
  if (!a.histogram.empty()) {
    Emit(RenderHistogram(stats, ParseHistogramFormat(a.histogram)), a.out);
    return 0;
  }
  json j = json::array();
  for (const LengthStats& s : stats) {
    json hist = json::object();
    for (const auto& [len, count] : s.histogram) hist[std::to_string(len)] = count;
    j.push_back({{"name", s.name},
                 {"total_references", s.total_references},
                 {"mean", s.mean},
                 {"median", s.median},
                 {"histogram", hist}});
  }
  Emit(DumpJson(j, 2) + "\n", a.out);
  return 0;
}

int RunNormalize(const std::string& in, const std::string& out) {
  std::vector<CaptionRecord> records = NormalizeBatch(CaptionsFromFile(in, ""));
  std::string text;
  for (const CaptionRecord& r : records) {
    text += DumpJson(json{{"sample_id", r.sample_id},
                          {"caption", r.raw},
                          {"normalized", r.normalized},
                          {"prompt_tier", PromptTierName(r.prompt_tier)},
                          {"condition_id", r.condition_id}}) +
            "\n";
  }
  Emit(text, out);
  return 0;
}

struct EvaluateArgs {
  std::string candidates;
  std::string manifest;
  std::string format = "native_jsonl";
  std::string tier = "basic";
  std::string condition = std::string(kCleanCondition);
  std::string embedder = "builtin";
  std::string reduction = "max";
  std::string synonyms;
  bool no_similarity = false;
  std::size_t workers = 1;
  std::string out;
};

int RunEvaluate(const EvaluateArgs& a) {
  const Manifest manifest = LoadManifest(a.manifest, ParseManifestFormat(a.format));
  const PromptTier tier = ParsePromptTier(a.tier);
  std::map<std::string, std::string> captions;
  for (CaptionRecord& r : NormalizeBatch(CaptionsFromFile(a.candidates, ""))) {
    if (r.prompt_tier == tier && r.condition_id == a.condition) {
      captions[r.sample_id] = std::move(r.normalized);
    }
  }
  std::vector<EvalPair> pairs;
  std::vector<SampleError> errors;
  for (const Sample& s : manifest.samples) {
    auto it = captions.find(s.sample_id);
    if (it == captions.end()) {
      errors.push_back({s.sample_id, "caption", "no candidate caption"});
      continue;
    }
    pairs.push_back(MakeEvalPair(s.sample_id, it->second, s.references));
  }
  std::optional<SynonymTable> synonyms;
  if (!a.synonyms.empty()) synonyms = SynonymTable::Load(a.synonyms);
  ScoreOptions options;
  options.meteor.synonyms = synonyms ? &*synonyms : nullptr;
  options.workers = a.workers;
  const CorpusEvaluation eval = ScoreCorpus(pairs, options);

  json out = {{"corpus", eval.corpus}, {"similarity", nullptr}, {"samples", json::array()}};
  std::optional<SimilarityResult> sim;
  if (!a.no_similarity) {
    std::vector<SimilarityInput> inputs;
    for (const EvalPair& p : pairs) {
      SimilarityInput in{p.sample_id, p.candidate.Join(), {}};
      for (const TokenSeq& r : p.references) in.references.push_back(r.Join());
      inputs.push_back(std::move(in));
    }
    std::unique_ptr<EmbeddingProvider> embedder = MakeEmbedder(a.embedder);
    try {
      sim = SimilarityCorpus(inputs, *embedder, ParseSimilarityReduction(a.reduction));
      out["similarity"] = sim->score;
    } catch (const ProviderError& e) {
      errors.push_back({"", "similarity", e.what()});
    }
  }
  for (std::size_t i = 0; i < eval.samples.size(); ++i) {
    json s = eval.samples[i];
    s["similarity"] = sim ? json(sim->per_pair[i]) : json(nullptr);
    out["samples"].push_back(std::move(s));
  }
  out["errors"] = errors;
  Emit(DumpJson(out, 2) + "\n", a.out);
  return 0;
}

struct CaptionArgs {
  std::string manifest;
  std::string format = "native_jsonl";
  std::string provider;
  std::string tier = "basic";
  std::string model_id;
  std::string condition = std::string(kCleanCondition);
  std::string decoding;
  std::size_t concurrency = 4;
  double timeout_s = 60;
  std::string out;
};

int RunCaption(const CaptionArgs& a) {
  const Manifest manifest = LoadManifest(a.manifest, ParseManifestFormat(a.format));
  const PromptTier tier = ParsePromptTier(a.tier);
  const std::string model_id = a.model_id.empty() ? a.provider : a.model_id;
  std::vector<CaptionRecord> records;
  int status = 0;
  if (a.provider.rfind("file:", 0) == 0) {
    std::map<std::string, CaptionRecord> by_id;
    for (CaptionRecord& r : CaptionsFromFile(a.provider.substr(5), model_id)) {
      if (r.prompt_tier == tier && r.condition_id == a.condition) by_id[r.sample_id] = std::move(r);
    }
    for (const Sample& s : manifest.samples) {
      auto it = by_id.find(s.sample_id);
      if (it == by_id.end()) {
        std::cerr << "error: " << s.sample_id << ": no caption in file\n";
        status = 1;
      } else {
        records.push_back(it->second);
      }
    }
  } else if (a.provider.rfind("http:", 0) == 0) {
    DecodingParams decoding;
    if (!a.decoding.empty()) {
      const json j = json::parse(a.decoding, nullptr, false);
      if (j.is_discarded()) throw ConfigError("--decoding is not valid JSON");
      decoding = j.get<DecodingParams>();
    }
    HttpCaptionOptions options;
    options.concurrency = a.concurrency;
    options.call.timeout = std::chrono::milliseconds(static_cast<int64_t>(a.timeout_s * 1000));
    std::vector<CaptionImage> images;
    for (const Sample& s : manifest.samples) images.push_back({s.sample_id, manifest.ResolveImage(s)});
    HttpCaptionResult result = CaptionsFromHttp(a.provider.substr(5), images, tier, decoding,
                                                model_id, a.condition, options);
    records = std::move(result.records);
    for (const SampleError& e : result.errors) {
      std::cerr << "error: " << e.sample_id << ": " << e.message << "\n";
      status = 1;
    }
    if (result.run_error) {
      std::cerr << "error: " << *result.run_error << "\n";
      status = 1;
    }
  } else {
    throw ConfigError("--provider must be file:<path> or http:<url>");
  }
  Emit(SerializeCaptionFile(records), a.out);
  return status;
}

int RunRun(const std::string& config_path, const std::string& out, std::size_t workers) {
  const RunConfig config = LoadRunConfig(config_path);
  RunOptions options;
  if (!out.empty()) options.output_dir = out;
  if (workers > 0) options.workers = workers;
  const RunOutput output = Run(config, options);
  std::size_t invalid = 0;
  for (const CellResult& c : output.result.cells) {
    std::cout << c.key << ": ";
    if (c.valid) {
      std::cout << "BLEU-1 " << FormatFixed(c.scores->bleu[0], 4) << ", CIDEr "
                << FormatFixed(c.scores->cider, 4) << ", similarity "
                << (c.similarity ? FormatFixed(*c.similarity, 4) : "n/a") << ", "
                << c.samples_scored << "/" << c.samples_total << " samples\n";
    } else {
      ++invalid;
      std::cout << "invalid (" << c.invalid_reason << ")\n";
    }
  }
  for (const std::string& e : output.result.run_errors) std::cerr << "error: " << e << "\n";
  std::cout << output.result.cells.size() << " cells, " << invalid << " invalid, "
            << output.errors.size() << " sample errors; output in "
            << output.output_dir.string() << "\n";
  return output.result.run_errors.empty() ? 0 : 1;
}

struct ReportArgs {
  std::string run;
  std::string table = "1";
  std::string format = "markdown";
  std::vector<std::string> manifests;
  std::vector<std::string> manifest_formats;
  std::string out;
};

int RunReport(const ReportArgs& a) {
  if (a.table == "hist") {
    const std::vector<LengthStats> stats = LoadLengthStats(a.manifests, a.manifest_formats);
    Emit(RenderHistogram(stats, ParseHistogramFormat(a.format)), a.out);
    return 0;
  }
  if (a.run.empty()) throw ConfigError("--run is required for tables 1 and 2");
  const RunResult result = LoadRunResult(a.run);
  const Table table = a.table == "1" ? BuildTable1(result) : BuildTable2(result);
  Emit(RenderTable(table, ParseTableFormat(a.format)), a.out);
  return 0;
}

int RunCompare(const std::string& clean, const std::string& noisy, const std::string& format,
               const std::string& out) {
  const Comparison cmp = Compare(LoadRunResult(clean), LoadRunResult(noisy));
  for (const std::string& w : cmp.warnings) std::cerr << "warning: " << w << "\n";
  if (format == "json") {
    Emit(DumpJson(json(cmp), 2) + "\n", out);
  } else {
    Emit(RenderTable(BuildComparisonTable(cmp), ParseTableFormat(format)), out);
  }
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Caption robustness benchmark toolkit"};
  app.require_subcommand(1);
  int status = 0;

  CorruptArgs corrupt;
  auto* c = app.add_subcommand("corrupt", "Write a corrupted copy of a dataset");
  c->add_option("--manifest", corrupt.manifest, "Input manifest")->required();
  c->add_option("--manifest-format", corrupt.format, "native_jsonl, flickr_tsv or nocaps_json");
  c->add_option("--kind", corrupt.kind, "Corruption kind");
  c->add_option("--level", corrupt.level, "low, medium or high");
  c->add_option("--param", corrupt.params, "Parameter override name=value (repeatable)");
  c->add_option("--mixture", corrupt.mixture, "JSON file with a corruption or mixture spec");
  c->add_option("--seed", corrupt.seed, "Run seed");
  c->add_option("--out", corrupt.out, "Output directory")->required();
  c->add_option("--workers", corrupt.workers, "Worker threads")->check(CLI::PositiveNumber);
  c->callback([&] { status = RunCorrupt(corrupt); });

  ManifestArgs margs;
  auto* m = app.add_subcommand("manifest", "Convert manifests or describe their captions");
  m->require_subcommand(1);
  auto* mc = m->add_subcommand("convert", "Convert to the native JSON-Lines manifest");
  mc->add_option("--in", margs.in, "Input annotation file")->required();
  mc->add_option("--from", margs.from, "flickr_tsv, nocaps_json or native_jsonl")->required();
  mc->add_option("--images-dir", margs.images_dir, "Directory holding the images");
  mc->add_option("--name", margs.name, "Manifest name");
  mc->add_option("--out", margs.out, "Output file (stdout when absent)");
  mc->callback([&] { status = RunManifestConvert(margs); });
  auto* ms = m->add_subcommand("stats", "Reference caption length statistics");
  ms->add_option("--manifest", margs.manifests, "Manifest (repeatable)")->required();
  ms->add_option("--format", margs.formats, "Manifest format, once or per manifest");
  ms->add_option("--histogram", margs.histogram, "Emit a csv or svg histogram instead");
  ms->add_option("--out", margs.out, "Output file (stdout when absent)");
  ms->callback([&] { status = RunManifestStats(margs); });

  std::string norm_in, norm_out;
  auto* n = app.add_subcommand("normalize", "Normalize a caption file");
  n->add_option("--in", norm_in, "Caption JSONL")->required();
  n->add_option("--out", norm_out, "Output JSONL (stdout when absent)");
  n->callback([&] { status = RunNormalize(norm_in, norm_out); });

  EvaluateArgs ev;
  auto* e = app.add_subcommand("evaluate", "Score a caption file against a manifest");
  e->add_option("--candidates", ev.candidates, "Caption JSONL")->required();
  e->add_option("--manifest", ev.manifest, "Manifest with references")->required();
  e->add_option("--manifest-format", ev.format, "Manifest format");
  e->add_option("--tier", ev.tier, "Prompt tier to select");
  e->add_option("--condition", ev.condition, "Condition id to select");
  e->add_option("--embedder", ev.embedder, "builtin or http:<url>");
  e->add_option("--similarity-reduction", ev.reduction, "max or mean");
  e->add_flag("--no-similarity", ev.no_similarity, "Skip embedding similarity");
  e->add_option("--synonyms", ev.synonyms, "Synonym table for METEOR");
  e->add_option("--workers", ev.workers, "Worker threads")->check(CLI::PositiveNumber);
  e->add_option("--out", ev.out, "Output JSON (stdout when absent)");
  e->callback([&] { status = RunEvaluate(ev); });

  CaptionArgs cap;
  auto* cp = app.add_subcommand("caption", "Collect captions from a provider");
  cp->add_option("--manifest", cap.manifest, "Manifest")->required();
  cp->add_option("--manifest-format", cap.format, "Manifest format");
  cp->add_option("--provider", cap.provider, "file:<path> or http:<url>")->required();
  cp->add_option("--tier", cap.tier, "basic, descriptive or reasoning");
  cp->add_option("--model-id", cap.model_id, "Model id recorded with each caption");
  cp->add_option("--condition", cap.condition, "Condition id recorded with each caption");
  cp->add_option("--decoding", cap.decoding, "Decoding parameters as JSON");
  cp->add_option("--concurrency", cap.concurrency, "Requests in flight")->check(CLI::PositiveNumber);
  cp->add_option("--timeout", cap.timeout_s, "Per-request timeout in seconds");
  cp->add_option("--out", cap.out, "Output JSONL (stdout when absent)");
  cp->callback([&] { status = RunCaption(cap); });

  std::string run_config, run_out;
  std::size_t run_workers = 0;
  auto* r = app.add_subcommand("run", "Run a full benchmark");
  r->add_option("--config", run_config, "Run config (JSON)")->required();
  r->add_option("--out", run_out, "Output directory, overriding the config");
  r->add_option("--workers", run_workers, "Worker threads, overriding the config");
  r->callback([&] { status = RunRun(run_config, run_out, run_workers); });

  ReportArgs rep;
  auto* rp = app.add_subcommand("report", "Render tables or histograms");
  rp->add_option("--run", rep.run, "Run directory or result.json");
  rp->add_option("--table", rep.table, "1, 2 or hist")->check(CLI::IsMember({"1", "2", "hist"}));
  rp->add_option("--format", rep.format, "markdown or csv; csv or svg for hist");
  rp->add_option("--manifest", rep.manifests, "Manifest for hist (repeatable)");
  rp->add_option("--manifest-format", rep.manifest_formats,
                 "Manifest format, once or per manifest");
  rp->add_option("--out", rep.out, "Output file (stdout when absent)");
  rp->callback([&] { status = RunReport(rep); });

  std::string cmp_clean, cmp_noisy, cmp_format = "json", cmp_out;
  auto* cm = app.add_subcommand("compare", "Score differences between two runs");
  cm->add_option("--clean", cmp_clean, "Run with clean cells")->required();
  cm->add_option("--noisy", cmp_noisy, "Run with corrupted cells")->required();
  cm->add_option("--format", cmp_format, "json, markdown or csv");
  cm->add_option("--out", cmp_out, "Output file (stdout when absent)");
  cm->callback([&] { status = RunCompare(cmp_clean, cmp_noisy, cmp_format, cmp_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return status;
}

}  // namespace
}  // namespace capharness

int main(int argc, char** argv) { return capharness::Main(argc, argv); }
