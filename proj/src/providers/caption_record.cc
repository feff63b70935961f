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

#include "capharness/providers/caption_record.h"

#include "capharness/common/errors.h"

namespace capharness {

std::string_view PromptTierName(PromptTier tier) {
  switch (tier) {
    case PromptTier::kBasic:
      return "basic";
    case PromptTier::kDescriptive:
      return "descriptive";
    case PromptTier::kReasoning:
      return "reasoning";
  }
  return "basic";
}

PromptTier ParsePromptTier(std::string_view name) {
  if (name == "basic") return PromptTier::kBasic;
  if (name == "descriptive") return PromptTier::kDescriptive;
  if (name == "reasoning") return PromptTier::kReasoning;
  throw ParseError("", "unknown prompt tier '" + std::string(name) +
                           "' (expected basic, descriptive or reasoning)");
}

std::string_view DefaultPromptTemplate(PromptTier tier) {
  switch (tier) {
    case PromptTier::kBasic:
      return "Describe the image.";
    case PromptTier::kDescriptive:
      return "List the objects and actions in the image.";
    case PromptTier::kReasoning:
      return "What is happening in the image and why?";
  }
  return "Describe the image.";
}

void to_json(nlohmann::json& j, const CaptionRecord& r) {
  j = nlohmann::json{{"sample_id", r.sample_id},   {"model_id", r.model_id},
                     {"prompt_tier", PromptTierName(r.prompt_tier)},
                     {"condition_id", r.condition_id}, {"caption", r.raw},
                     {"normalized", r.normalized}};
}

}  // namespace capharness
