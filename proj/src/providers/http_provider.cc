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

#include "capharness/providers/http_provider.h"

#include <chrono>

#include "capharness/common/hash.h"
#include "capharness/common/json_util.h"
#include "capharness/common/parallel.h"
#include "capharness/image/codec.h"

namespace capharness {

nlohmann::json CaptionRequestBody(std::string_view image_b64, std::string_view prompt,
                                  const DecodingParams& decoding, std::string_view model_id) {
  return nlohmann::json{{"image_b64", image_b64},
                        {"prompt", prompt},
                        {"temperature", decoding.temperature},
                        {"top_k", decoding.top_k},
                        {"beam_size", decoding.beam_size},
                        {"max_tokens", decoding.max_tokens},
                        {"model_id", model_id}};
}

namespace {

struct Slot {
  std::optional<CaptionRecord> record;
  std::optional<SampleError> error;
  bool unreachable = false;
  std::string reason;
};

}  // namespace

HttpCaptionResult CaptionsFromHttp(std::string_view endpoint, std::span<const CaptionImage> images,
                                   PromptTier tier, const DecodingParams& decoding,
                                   std::string_view model_id, std::string_view condition_id,
                                   const HttpCaptionOptions& options) {
  decoding.Validate();
  const HttpEndpoint ep = ParseHttpEndpoint(endpoint);
  const std::string prompt = options.prompt ? *options.prompt : std::string(DefaultPromptTemplate(tier));
  std::vector<Slot> slots(images.size());

  ParallelFor(images.size(), options.concurrency, [&](std::size_t i) {
    const CaptionImage& image = images[i];
    Slot& slot = slots[i];
    std::string b64;
    try {
      b64 = Base64Encode(EncodePng(LoadImage(image.path)));
    } catch (const Error& e) {
      slot.error = SampleError{image.sample_id, "image", e.what()};
      return;
    }
    const std::string body = DumpJson(CaptionRequestBody(b64, prompt, decoding, model_id));
    const auto start = std::chrono::steady_clock::now();
    const HttpOutcome outcome = PostJson(ep, "/caption", body, options.call);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    switch (outcome.kind) {
      case HttpOutcome::Kind::kUnreachable:
        slot.unreachable = true;
        slot.reason = outcome.error;
        return;
      case HttpOutcome::Kind::kHttpError:
      case HttpOutcome::Kind::kTransport:
        slot.error = SampleError{image.sample_id, "caption", outcome.error};
        return;
      case HttpOutcome::Kind::kOk:
        break;
    }
    const nlohmann::json j = nlohmann::json::parse(outcome.body, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("caption") || !j["caption"].is_string()) {
      slot.error = SampleError{image.sample_id, "caption",
                               "malformed response: expected {\"caption\": string}"};
      return;
    }
    CaptionRecord r;
    r.sample_id = image.sample_id;
    r.model_id = std::string(model_id);
    r.prompt_tier = tier;
    r.condition_id = std::string(condition_id);
    r.raw = j["caption"].get<std::string>();
    r.latency_ms = std::chrono::duration<double, std::milli>(elapsed).count();
    slot.record = std::move(r);
  });

  HttpCaptionResult result;
  std::string reason;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    Slot& slot = slots[i];
    if (slot.record) result.records.push_back(std::move(*slot.record));
    if (slot.error) result.errors.push_back(std::move(*slot.error));
    if (slot.unreachable) {
      result.missing.push_back(images[i].sample_id);
      if (reason.empty()) reason = slot.reason;
    }
  }
  if (!result.missing.empty()) {
    std::string list;
    for (const std::string& id : result.missing) list += (list.empty() ? "" : ", ") + id;
    result.run_error = "caption service " + std::string(endpoint) + " unreachable (" + reason +
                       "); missing samples: " + list;
  }
  return result;
}

HttpCaptionResult CaptionsFromHttp(std::string_view endpoint, const Manifest& manifest,
                                   PromptTier tier, const DecodingParams& decoding,
                                   std::string_view model_id, const HttpCaptionOptions& options) {
  std::vector<CaptionImage> images;
  images.reserve(manifest.samples.size());
  for (const Sample& s : manifest.samples) images.push_back({s.sample_id, manifest.ResolveImage(s)});
  return CaptionsFromHttp(endpoint, images, tier, decoding, model_id, kCleanCondition, options);
}

std::vector<std::string> ServiceModels(std::string_view endpoint, const HttpCallOptions& options) {
  const HttpOutcome outcome = GetPath(ParseHttpEndpoint(endpoint), "/health", options);
  if (outcome.kind != HttpOutcome::Kind::kOk) {
    throw ProviderError("health check of " + std::string(endpoint) + " failed: " + outcome.error);
  }
  nlohmann::json j = nlohmann::json::parse(outcome.body, nullptr, false);
  if (j.is_object() && j.contains("models")) j = j["models"];
  if (!j.is_array()) {
    throw ProviderError("health response of " + std::string(endpoint) + " is not a model list");
  }
  std::vector<std::string> models;
  for (const nlohmann::json& m : j) {
    if (m.is_string()) {
      models.push_back(m.get<std::string>());
    } else if (m.is_object() && m.contains("model_id") && m["model_id"].is_string()) {
      models.push_back(m["model_id"].get<std::string>());
    } else {
      throw ProviderError("health response of " + std::string(endpoint) +
                          " has an entry without a model id");
    }
  }
  return models;
}

}  // namespace capharness
