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

#ifndef CAPHARNESS_COMMON_JSON_UTIL_H_
#define CAPHARNESS_COMMON_JSON_UTIL_H_

#include <string>

#include "json.hpp"

namespace capharness {

// Serializes with ill-formed UTF-8 replaced by U+FFFD instead of throwing,
// so text from models and files can always be written out.
inline std::string DumpJson(const nlohmann::json& j, int indent = -1) {
  return j.dump(indent, ' ', false, nlohmann::json::error_handler_t::replace);
}

}  // namespace capharness

#endif  // CAPHARNESS_COMMON_JSON_UTIL_H_
