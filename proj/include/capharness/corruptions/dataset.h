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

#ifndef CAPHARNESS_CORRUPTIONS_DATASET_H_
#define CAPHARNESS_CORRUPTIONS_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "capharness/common/errors.h"
#include "capharness/corruptions/corrupt.h"
#include "capharness/datasets/manifest.h"

namespace capharness {

struct CorruptDatasetOptions {
  uint64_t run_seed = 0;
  // When set, mixed into every per-sample seed so that conditions of one
  // run draw independent noise.
  std::optional<std::string> condition_id;
  std::size_t workers = 1;
};

struct CorruptDatasetResult {
  // Successfully corrupted samples in input order, rooted at the output
  // directory.
  Manifest manifest;
  // One entry per sample whose image could not be read or decoded.
  std::vector<SampleError> errors;
  // Samples whose output file already existed and was reused.
  std::size_t reused = 0;
};

// hash64(run_seed, sample_id), or hash64(run_seed, sample_id, condition_id)
// when a condition is given.
uint64_t SampleSeed(uint64_t run_seed, std::string_view sample_id,
                    const std::optional<std::string>& condition_id = std::nullopt);

// Corrupts every image of `manifest` with `plan` and writes the results to
// `out_dir` as <id>_<key>.png (or .jpg when the plan ends in a re-encoding
// jpeg_compression). <id> is the filename-safe sample id and <key> is a
// 64-bit hash of the source bytes and the seeded plan, so an existing file
// with the same name already holds the right output and is reused.
CorruptDatasetResult CorruptDataset(const Manifest& manifest, const CorruptionPlan& plan,
                                    const std::filesystem::path& out_dir,
                                    const CorruptDatasetOptions& options = {});

}  // namespace capharness

#endif  // CAPHARNESS_CORRUPTIONS_DATASET_H_
