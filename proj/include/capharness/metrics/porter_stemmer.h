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

#ifndef CAPHARNESS_METRICS_PORTER_STEMMER_H_
#define CAPHARNESS_METRICS_PORTER_STEMMER_H_

#include <string>
#include <string_view>

namespace capharness {

// M. F. Porter's suffix-stripping stemmer, following the author's reference
// C implementation (which maps "bli" -> "ble" and "logi" -> "log" in step 2).
// Words that are not all lowercase ASCII letters, and words of length <= 2,
// are returned unchanged.
std::string PorterStem(std::string_view word);

}  // namespace capharness

#endif  // CAPHARNESS_METRICS_PORTER_STEMMER_H_
