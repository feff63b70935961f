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

#include "capharness/harness/compare.h"

#include <set>

namespace capharness {

namespace {

MetricDelta Delta(std::string metric, double clean, double noisy) {
  MetricDelta d{std::move(metric), clean, noisy, noisy - clean, std::nullopt};
  if (clean != 0.0) d.ratio = noisy / clean;
  return d;
}

std::string Describe(const CellResult& c) {
  return c.dataset + " / " + c.condition_id + " / " + c.model_id + " / " +
         std::string(PromptTierName(c.prompt_tier));
}

}  // namespace

Comparison Compare(const RunResult& clean, const RunResult& noisy) {
  Comparison out;
  std::set<const CellResult*> used;
  for (const CellResult& n : noisy.cells) {
    if (!n.valid || !n.scores) {
      out.warnings.push_back("noisy cell " + Describe(n) + " is invalid");
      continue;
    }
    const CellResult* c = clean.Find(n.dataset, kCleanCondition, n.model_id, n.prompt_tier);
    if (c == nullptr) {
      out.warnings.push_back("noisy cell " + Describe(n) + " has no clean counterpart");
      continue;
    }
    if (!c->valid || !c->scores) {
      out.warnings.push_back("clean cell " + Describe(*c) + " is invalid");
      continue;
    }
    used.insert(c);
    CellComparison cmp{n.dataset, n.condition_id, n.model_id, n.prompt_tier, {}};
    const CorpusScores& a = *c->scores;
    const CorpusScores& b = *n.scores;
    for (int k = 0; k < 4; ++k) {
      cmp.metrics.push_back(Delta("bleu" + std::to_string(k + 1), a.bleu[k], b.bleu[k]));
    }
    cmp.metrics.push_back(Delta("meteor", a.meteor, b.meteor));
    cmp.metrics.push_back(Delta("rouge_l", a.rouge_l, b.rouge_l));
    cmp.metrics.push_back(Delta("cider", a.cider, b.cider));
    cmp.metrics.push_back(Delta("cider_plain", a.cider_plain, b.cider_plain));
    cmp.metrics.push_back(Delta("ratio", a.Ratio(), b.Ratio()));
    if (c->similarity && n.similarity) {
      cmp.metrics.push_back(Delta("similarity", *c->similarity, *n.similarity));
    }
    out.cells.push_back(std::move(cmp));
  }
  for (const CellResult& c : clean.cells) {
    if (!c.IsClean() || used.contains(&c)) continue;
    if (!c.valid) continue;
    bool has_noisy = false;
    for (const CellResult& n : noisy.cells) {
      has_noisy = has_noisy || (n.dataset == c.dataset && n.model_id == c.model_id &&
                                n.prompt_tier == c.prompt_tier);
    }
    if (!has_noisy) out.warnings.push_back("clean cell " + Describe(c) + " has no noisy counterpart");
  }
  return out;
}

void to_json(nlohmann::json& j, const Comparison& c) {
  j = nlohmann::json{{"cells", nlohmann::json::array()}, {"warnings", c.warnings}};
  for (const CellComparison& cell : c.cells) {
    nlohmann::json metrics = nlohmann::json::object();
    for (const MetricDelta& m : cell.metrics) {
      metrics[m.metric] = {{"clean", m.clean},
                           {"noisy", m.noisy},
                           {"delta", m.delta},
                           {"ratio", m.ratio ? nlohmann::json(*m.ratio) : nlohmann::json(nullptr)}};
    }
    j["cells"].push_back({{"dataset", cell.dataset},
                          {"condition_id", cell.condition_id},
                          {"model_id", cell.model_id},
                          {"prompt_tier", PromptTierName(cell.prompt_tier)},
                          {"metrics", std::move(metrics)}});
  }
}

}  // namespace capharness
