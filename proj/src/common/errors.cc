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

#include "capharness/common/errors.h"

namespace capharness {

void to_json(nlohmann::json& j, const SampleError& e) {
  j = nlohmann::json{{"sample_id", e.sample_id}, {"stage", e.stage}, {"message", e.message}};
}

void from_json(const nlohmann::json& j, SampleError& e) {
  j.at("sample_id").get_to(e.sample_id);
  j.at("stage").get_to(e.stage);
  j.at("message").get_to(e.message);
}

}  // namespace capharness
