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

#ifndef CAPHARNESS_PROVIDERS_FILE_PROVIDER_H_
#define CAPHARNESS_PROVIDERS_FILE_PROVIDER_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "capharness/common/errors.h"
#include "capharness/providers/caption_record.h"

namespace capharness {

struct CaptionLineError {
  int line = 0;
  std::string message;
};

// Every problem found in a caption file; locus() names the first line.
class CaptionFileError : public ParseError {
 public:
  explicit CaptionFileError(std::vector<CaptionLineError> errors);

  const std::vector<CaptionLineError>& errors() const { return errors_; }

 private:
  std::vector<CaptionLineError> errors_;
};

// Pre-generated captions, one JSON object per line:
//   {"sample_id": ..., "caption": ..., "prompt_tier"?: ..., "condition_id"?: ...}
// prompt_tier defaults to basic and condition_id to "clean". Blank lines are
// skipped. All malformed lines, and repeats of a (sample_id, prompt_tier,
// condition_id) key, are reported together in one CaptionFileError. The
// records are not normalized.
std::vector<CaptionRecord> ParseCaptionFile(std::string_view text, std::string_view model_id);
std::vector<CaptionRecord> CaptionsFromFile(const std::filesystem::path& path,
                                            std::string_view model_id);

// Writes records in the format above, one per line in input order.
std::string SerializeCaptionFile(std::span<const CaptionRecord> records);

}  // namespace capharness

#endif  // CAPHARNESS_PROVIDERS_FILE_PROVIDER_H_
