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

#include "capharness/providers/decoding.h"

#include <cmath>
#include <string>

#include "capharness/common/errors.h"

namespace capharness {

void DecodingParams::Validate() const {
  if (!std::isfinite(temperature) || temperature < 0.0) {
    throw ParameterError("decoding.temperature must be a finite number >= 0");
  }
  if (top_k < 0) throw ParameterError("decoding.top_k must be >= 0");
  if (beam_size < 1) throw ParameterError("decoding.beam_size must be >= 1");
  if (max_tokens < 1) throw ParameterError("decoding.max_tokens must be >= 1");
}

void to_json(nlohmann::json& j, const DecodingParams& d) {
  j = nlohmann::json{{"temperature", d.temperature},
                     {"top_k", d.top_k},
                     {"beam_size", d.beam_size},
                     {"max_tokens", d.max_tokens}};
}

void from_json(const nlohmann::json& j, DecodingParams& d) {
  if (!j.is_object()) throw ConfigError("decoding must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "temperature" && key != "top_k" && key != "beam_size" && key != "max_tokens") {
      throw ConfigError("unknown decoding field '" + key + "'");
    }
  }
  try {
    d.temperature = j.value("temperature", d.temperature);
    d.top_k = j.value("top_k", d.top_k);
    d.beam_size = j.value("beam_size", d.beam_size);
    d.max_tokens = j.value("max_tokens", d.max_tokens);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("decoding: ") + e.what());
  }
  d.Validate();
}

}  // namespace capharness
