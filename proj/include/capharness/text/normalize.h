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

#ifndef CAPHARNESS_TEXT_NORMALIZE_H_
#define CAPHARNESS_TEXT_NORMALIZE_H_

#include <string>
#include <string_view>
#include <vector>

#include "capharness/providers/caption_record.h"

namespace capharness {

struct NormalizeOptions {
  bool lowercase = true;
  // Punctuation kept by the character filter. Extend to keep more.
  std::string kept_punctuation = ",.";
};

// Cleans a raw model caption. Stages, in order:
//   1. per line: drop leading '#' header marks and markdown emphasis runs
//      of '*', '_' or '`' (a lone '*' bullet at line start is left for 2)
//   2. per line: drop a list prefix matching ^\s*(\d+[.)]|[-*•])\s+
//   3. join lines with spaces; drop every character that is not a letter,
//      digit, whitespace or kept punctuation
//   4. collapse whitespace runs to one space
//   5. trim, also stripping kept punctuation from the front (a caption
//      does not start with ". ")
//   6. lowercase, if enabled
// The pipeline is repeated until it reaches a fixed point, so the function
// is idempotent. Total: any input, including ill-formed UTF-8, is accepted.
std::string NormalizeCaption(std::string_view raw, const NormalizeOptions& options = {});

// Fills `normalized` from `raw` for each record; raw text is kept.
std::vector<CaptionRecord> NormalizeBatch(std::vector<CaptionRecord> records,
                                          const NormalizeOptions& options = {});

}  // namespace capharness

#endif  // CAPHARNESS_TEXT_NORMALIZE_H_
