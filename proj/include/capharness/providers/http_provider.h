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

#ifndef CAPHARNESS_PROVIDERS_HTTP_PROVIDER_H_
#define CAPHARNESS_PROVIDERS_HTTP_PROVIDER_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "capharness/common/errors.h"
#include "capharness/common/http_client.h"
#include "capharness/datasets/manifest.h"
#include "capharness/providers/caption_record.h"
#include "capharness/providers/decoding.h"

namespace capharness {

// An image to caption. The file may be PNG or JPEG; it is always sent as
// PNG.
struct CaptionImage {
  std::string sample_id;
  std::filesystem::path path;
};

struct HttpCaptionOptions {
  std::size_t concurrency = 4;
  HttpCallOptions call;
  // Sent instead of the tier's default template when set.
  std::optional<std::string> prompt;
};

struct HttpCaptionResult {
  // Successful captions, in input order. Failed samples are absent.
  std::vector<CaptionRecord> records;
  // Per-sample failures: unreadable image, HTTP error status, malformed
  // response.
  std::vector<SampleError> errors;
  // Set when the service could not be reached for some samples; those are
  // listed in `missing`.
  std::optional<std::string> run_error;
  std::vector<std::string> missing;
};

// The JSON body POSTed to /caption.
nlohmann::json CaptionRequestBody(std::string_view image_b64, std::string_view prompt,
                                  const DecodingParams& decoding, std::string_view model_id);

// POSTs one request per image to {endpoint}/caption and collects the
// "caption" field of each answer. Records carry `condition_id`.
HttpCaptionResult CaptionsFromHttp(std::string_view endpoint, std::span<const CaptionImage> images,
                                   PromptTier tier, const DecodingParams& decoding,
                                   std::string_view model_id, std::string_view condition_id,
                                   const HttpCaptionOptions& options = {});

// Clean images of a manifest.
HttpCaptionResult CaptionsFromHttp(std::string_view endpoint, const Manifest& manifest,
                                   PromptTier tier, const DecodingParams& decoding,
                                   std::string_view model_id,
                                   const HttpCaptionOptions& options = {});

// GET {endpoint}/health. Accepts a JSON array of model ids (strings or
// objects with "model_id") or an object holding such an array under
// "models". Throws ProviderError.
std::vector<std::string> ServiceModels(std::string_view endpoint,
                                       const HttpCallOptions& options = {});

}  // namespace capharness

#endif  // CAPHARNESS_PROVIDERS_HTTP_PROVIDER_H_
