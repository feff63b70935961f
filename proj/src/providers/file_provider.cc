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

#include "capharness/providers/file_provider.h"

#include <set>
#include <tuple>

#include "capharness/common/file_util.h"
#include "capharness/common/json_util.h"
#include "json.hpp"

namespace capharness {
namespace {

std::string JoinErrors(const std::vector<CaptionLineError>& errors) {
  std::string out;
  for (const CaptionLineError& e : errors) {
    if (!out.empty()) out += "; ";
    out += "line " + std::to_string(e.line) + ": " + e.message;
  }
  return out;
}

std::string FirstLocus(const std::vector<CaptionLineError>& errors) {
  return errors.empty() ? std::string() : "line " + std::to_string(errors.front().line);
}

}  // namespace

CaptionFileError::CaptionFileError(std::vector<CaptionLineError> errors)
    : ParseError(FirstLocus(errors), "invalid caption file: " + JoinErrors(errors)),
      errors_(std::move(errors)) {}

std::vector<CaptionRecord> ParseCaptionFile(std::string_view text, std::string_view model_id) {
  std::vector<CaptionRecord> records;
  std::vector<CaptionLineError> errors;
  std::set<std::tuple<std::string, PromptTier, std::string>> seen;
  int line_no = 0;
  for (const std::string& line : SplitLines(text)) {
    ++line_no;
    if (TrimAscii(line).empty()) continue;
    const nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      errors.push_back({line_no, "not a JSON object"});
      continue;
    }
    CaptionRecord r;
    r.model_id = std::string(model_id);
    std::vector<std::string> problems;
    if (!j.contains("sample_id") || !j["sample_id"].is_string()) {
      problems.push_back("missing string field \"sample_id\"");
    } else {
      r.sample_id = j["sample_id"].get<std::string>();
    }
    if (!j.contains("caption") || !j["caption"].is_string()) {
      problems.push_back("missing string field \"caption\"");
    } else {
      r.raw = j["caption"].get<std::string>();
    }
    if (j.contains("prompt_tier")) {
      try {
        r.prompt_tier = ParsePromptTier(j["prompt_tier"].get<std::string>());
      } catch (const std::exception& e) {
        problems.push_back(std::string("bad prompt_tier: ") + e.what());
      }
    }
    if (j.contains("condition_id")) {
      if (j["condition_id"].is_string() && !j["condition_id"].get<std::string>().empty()) {
        r.condition_id = j["condition_id"].get<std::string>();
      } else {
        problems.push_back("condition_id must be a non-empty string");
      }
    }
    if (!problems.empty()) {
      std::string message;
      for (const std::string& p : problems) message += (message.empty() ? "" : ", ") + p;
      errors.push_back({line_no, message});
      continue;
    }
    if (!seen.emplace(r.sample_id, r.prompt_tier, r.condition_id).second) {
      errors.push_back({line_no, "duplicate caption for sample '" + r.sample_id + "', tier " +
                                     std::string(PromptTierName(r.prompt_tier)) +
                                     ", condition '" + r.condition_id + "'"});
      continue;
    }
    records.push_back(std::move(r));
  }
  if (!errors.empty()) throw CaptionFileError(std::move(errors));
  return records;
}

std::vector<CaptionRecord> CaptionsFromFile(const std::filesystem::path& path,
                                            std::string_view model_id) {
  return ParseCaptionFile(ReadFileToString(path), model_id);
}

std::string SerializeCaptionFile(std::span<const CaptionRecord> records) {
  std::string out;
  for (const CaptionRecord& r : records) {
    const nlohmann::json j = {{"sample_id", r.sample_id},
                              {"caption", r.raw},
                              {"prompt_tier", PromptTierName(r.prompt_tier)},
                              {"condition_id", r.condition_id}};
    out += DumpJson(j);
    out += '\n';
  }
  return out;
}

}  // namespace capharness
