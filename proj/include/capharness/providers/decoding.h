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

#ifndef CAPHARNESS_PROVIDERS_DECODING_H_
#define CAPHARNESS_PROVIDERS_DECODING_H_

#include "json.hpp"

namespace capharness {

// Fixed for a whole run and recorded in its provenance. The defaults decode
// greedily.
struct DecodingParams {
  double temperature = 0.0;
  int top_k = 0;  // 0 disables top-k
  int beam_size = 3;
  int max_tokens = 64;

  // Throws ParameterError naming the field.
  void Validate() const;

  bool operator==(const DecodingParams&) const = default;
};

void to_json(nlohmann::json& j, const DecodingParams& d);
// Missing keys keep their defaults. Validates.
void from_json(const nlohmann::json& j, DecodingParams& d);

}  // namespace capharness

#endif  // CAPHARNESS_PROVIDERS_DECODING_H_
