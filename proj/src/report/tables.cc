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

#include "capharness/report/tables.h"

#include <algorithm>
#include <set>
#include <tuple>

#include "capharness/common/errors.h"
#include "capharness/common/file_util.h"

namespace capharness {

TableFormat ParseTableFormat(std::string_view name) {
  if (name == "markdown" || name == "md") return TableFormat::kMarkdown;
  if (name == "csv") return TableFormat::kCsv;
  throw ConfigError("unknown table format '" + std::string(name) + "' (expected markdown or csv)");
}

namespace {

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string MarkdownField(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n' || c == '\r') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

std::string RenderRow(const std::vector<std::string>& row, TableFormat format) {
  std::string line;
  if (format == TableFormat::kCsv) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) line += ',';
      line += CsvField(row[i]);
    }
  } else {
    line = "|";
    for (const std::string& cell : row) line += " " + MarkdownField(cell) + " |";
  }
  return line + "\n";
}

std::string Fixed4(double v) { return FormatFixed(v, 4); }

std::string Optional4(const std::optional<double>& v) { return v ? Fixed4(*v) : "n/a"; }

// Kind display name plus any parameter overrides, e.g.
// "Gaussian Noise [sigma=0.3]".
std::string StepName(const CorruptionSpec& spec) {
  std::string name(NoiseDisplayName(spec.kind));
  const std::string id = spec.Id();
  const std::size_t bracket = id.find('[');
  if (bracket != std::string::npos) name += " " + id.substr(bracket);
  return name;
}

struct NoisyLabel {
  std::string noise;
  std::string level;
};

NoisyLabel LabelFor(const CellResult& cell) {
  const CorruptionPlan plan = PlanFromJson(cell.condition);
  if (const auto* spec = std::get_if<CorruptionSpec>(&plan)) {
    return {StepName(*spec), std::string(LevelDisplayName(spec->level))};
  }
  const MixtureSpec& mix = std::get<MixtureSpec>(plan);
  NoisyLabel label;
  std::set<Severity> levels;
  for (const CorruptionSpec& step : mix.steps) levels.insert(step.level);
  for (std::size_t i = 0; i < mix.steps.size(); ++i) {
    if (i > 0) {
      label.noise += " + ";
      if (levels.size() > 1) label.level += " + ";
    }
    label.noise += StepName(mix.steps[i]);
    if (levels.size() > 1) label.level += LevelDisplayName(mix.steps[i].level);
  }
  if (levels.size() == 1) label.level = LevelDisplayName(*levels.begin());
  return label;
}

std::string Qualified(const CellResult& cell, bool with_dataset, bool with_tier) {
  std::string out = cell.model_id;
  std::vector<std::string> parts;
  if (with_dataset) parts.push_back(cell.dataset);
  if (with_tier) parts.emplace_back(PromptTierName(cell.prompt_tier));
  if (parts.empty()) return out;
  out += " [";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i > 0 ? ", " : "") + parts[i];
  return out + "]";
}

std::vector<std::string> MetricColumns(const CellResult& cell) {
  std::vector<std::string> cols;
  for (int k = 0; k < 4; ++k) cols.push_back(cell.scores ? Fixed4(cell.scores->bleu[k]) : "n/a");
  cols.push_back(cell.scores ? Fixed4(cell.scores->meteor) : "n/a");
  cols.push_back(cell.scores ? Fixed4(cell.scores->rouge_l) : "n/a");
  cols.push_back(cell.scores ? Fixed4(cell.scores->cider) : "n/a");
  return cols;
}

}  // namespace

std::string RenderTable(const Table& table, TableFormat format) {
  std::string out = RenderRow(table.header, format);
  if (format == TableFormat::kMarkdown) {
    std::vector<std::string> rule(table.header.size(), "---");
    out += RenderRow(rule, format);
  }
  for (const auto& row : table.rows) out += RenderRow(row, format);
  return out;
}

std::string_view NoiseDisplayName(CorruptionKind kind) {
  switch (kind) {
    case CorruptionKind::kGaussianNoise:
      return "Gaussian Noise";
    case CorruptionKind::kImpulseNoise:
      return "Impulse Noise";
    case CorruptionKind::kSpeckleNoise:
      return "Speckle Noise";
    case CorruptionKind::kPoissonGaussianSensor:
      return "Poisson-Gaussian Sensor";
    case CorruptionKind::kGaussianBlur:
      return "Gaussian Blur";
    case CorruptionKind::kDefocusBlur:
      return "Defocus Blur";
    case CorruptionKind::kMotionBlur:
      return "Motion Blur";
    case CorruptionKind::kZoomBlur:
      return "Zoom Blur";
    case CorruptionKind::kSnow:
      return "Snow";
    case CorruptionKind::kJpegCompression:
      return "JPEG Compression";
    case CorruptionKind::kPixelate:
      return "Pixelate";
    case CorruptionKind::kLowLightGamma:
      return "Low Light";
    case CorruptionKind::kAdversarialPatch:
      return "Adversarial";
  }
  return "Unknown";
}

std::string_view LevelDisplayName(Severity level) {
  switch (level) {
    case Severity::kLow:
      return "Low";
    case Severity::kMedium:
      return "Medium";
    case Severity::kHigh:
      return "High";
  }
  return "Unknown";
}

Table BuildTable1(const RunResult& result) {
  Table t;
  t.header = {"Dataset", "Model",   "BLEU-1", "BLEU-2", "BLEU-3", "BLEU-4",
              "METEOR",  "ROUGE_L", "CIDEr",  "testlen", "reflen", "similarity"};
  std::set<PromptTier> tiers;
  bool any_clean = false;
  for (const CellResult& c : result.cells) {
    if (!c.IsClean()) continue;
    any_clean = true;
    tiers.insert(c.prompt_tier);
  }
  if (result.cells.empty()) return t;
  if (!any_clean) throw Error("Table 1 needs at least one clean cell");
  for (const CellResult& c : result.cells) {
    if (!c.IsClean()) continue;
    std::vector<std::string> row = {c.dataset, Qualified(c, false, tiers.size() > 1)};
    for (std::string& col : MetricColumns(c)) row.push_back(std::move(col));
    row.push_back(c.scores ? std::to_string(c.scores->testlen) : "n/a");
    row.push_back(c.scores ? std::to_string(c.scores->reflen) : "n/a");
    row.push_back(Optional4(c.similarity));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table BuildTable2(const RunResult& result) {
  Table t;
  t.header = {"Noise Type", "Level",  "Model",  "Ratio",   "BLEU-1", "BLEU-2",
              "BLEU-3",     "BLEU-4", "METEOR", "ROUGE-L", "CIDEr",  "Similarity"};
  if (result.cells.empty()) return t;
  struct Entry {
    NoisyLabel label;
    const CellResult* cell;
  };
  std::vector<Entry> entries;
  std::set<std::string> datasets;
  std::set<PromptTier> tiers;
  for (const CellResult& c : result.cells) {
    if (c.IsClean()) continue;
    entries.push_back({LabelFor(c), &c});
    datasets.insert(c.dataset);
    tiers.insert(c.prompt_tier);
  }
  if (entries.empty()) throw Error("Table 2 needs at least one corrupted cell");
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.label.noise, a.label.level, a.cell->model_id, a.cell->prompt_tier,
                    a.cell->dataset, a.cell->condition_id) <
           std::tie(b.label.noise, b.label.level, b.cell->model_id, b.cell->prompt_tier,
                    b.cell->dataset, b.cell->condition_id);
  });
  for (const Entry& e : entries) {
    const CellResult& c = *e.cell;
    std::vector<std::string> row = {e.label.noise, e.label.level,
                                    Qualified(c, datasets.size() > 1, tiers.size() > 1),
                                    c.scores ? FormatFixed(c.Ratio(), 3) : "n/a"};
    for (std::string& col : MetricColumns(c)) row.push_back(std::move(col));
    row.push_back(Optional4(c.similarity));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table BuildComparisonTable(const Comparison& comparison) {
  Table t;
  t.header = {"Dataset", "Condition", "Model", "Tier", "Metric", "Clean", "Noisy", "Delta", "Ratio"};
  for (const CellComparison& c : comparison.cells) {
    for (const MetricDelta& m : c.metrics) {
      t.rows.push_back({c.dataset, c.condition_id, c.model_id,
                        std::string(PromptTierName(c.prompt_tier)), m.metric, Fixed4(m.clean),
                        Fixed4(m.noisy), Fixed4(m.delta), m.ratio ? Fixed4(*m.ratio) : "n/a"});
    }
  }
  return t;
}

}  // namespace capharness
