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

#ifndef CAPHARNESS_PROVIDERS_CAPTION_RECORD_H_
#define CAPHARNESS_PROVIDERS_CAPTION_RECORD_H_

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace capharness {

enum class PromptTier { kBasic, kDescriptive, kReasoning };

std::string_view PromptTierName(PromptTier tier);
// Throws ParseError.
PromptTier ParsePromptTier(std::string_view name);
// The canonical instruction for each tier.
std::string_view DefaultPromptTemplate(PromptTier tier);

inline constexpr std::string_view kCleanCondition = "clean";

// A generated caption for one (sample, model, prompt tier, condition).
struct CaptionRecord {
  std::string sample_id;
  std::string model_id;
  PromptTier prompt_tier = PromptTier::kBasic;
  std::string condition_id = std::string(kCleanCondition);
  std::string raw;
  std::string normalized;
  std::optional<double> latency_ms;

  bool operator==(const CaptionRecord&) const = default;
};

// Latency is omitted so serialized records stay reproducible.
void to_json(nlohmann::json& j, const CaptionRecord& r);

}  // namespace capharness

#endif  // CAPHARNESS_PROVIDERS_CAPTION_RECORD_H_
