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

#include "capharness/corruptions/dataset.h"

#include <optional>

#include "capharness/common/file_util.h"
#include "capharness/common/hash.h"
#include "capharness/common/json_util.h"
#include "capharness/common/parallel.h"
#include "capharness/image/codec.h"

namespace capharness {

namespace fs = std::filesystem;

uint64_t SampleSeed(uint64_t run_seed, std::string_view sample_id,
                    const std::optional<std::string>& condition_id) {
  if (condition_id) return Hash64(run_seed, {sample_id, *condition_id});
  return Hash64(run_seed, {sample_id});
}

CorruptDatasetResult CorruptDataset(const Manifest& manifest, const CorruptionPlan& plan,
                                    const fs::path& out_dir,
                                    const CorruptDatasetOptions& options) {
  fs::create_directories(out_dir);
  const std::string extension = PlanWritesJpeg(plan) ? ".jpg" : ".png";
  const std::size_t n = manifest.samples.size();
  std::vector<std::optional<Sample>> outputs(n);
  std::vector<std::optional<SampleError>> errors(n);
  std::vector<char> reused(n, 0);

  ParallelFor(n, options.workers, [&](std::size_t i) {
    const Sample& sample = manifest.samples[i];
    const uint64_t seed = SampleSeed(options.run_seed, sample.sample_id, options.condition_id);
    const CorruptionPlan seeded = SeedPlan(plan, seed);
    std::vector<uint8_t> source;
    try {
      source = ReadFileBytes(manifest.ResolveImage(sample));
    } catch (const Error& e) {
      errors[i] = SampleError{sample.sample_id, "corrupt", e.what()};
      return;
    }
    const uint64_t key =
        Hash64(seed, {Sha256Hex(source), DumpJson(PlanToJson(seeded))});
    std::string stem = SanitizeForFilename(sample.sample_id).substr(0, 64);
    const std::string filename = stem + "_" + Hex64(key) + extension;
    const fs::path target = out_dir / filename;
    if (fs::exists(target)) {
      reused[i] = 1;
    } else {
      try {
        const std::vector<uint8_t> bytes = ApplyPlanEncoded(seeded, DecodeImage(source));
        WriteFileAtomic(target, bytes);
      } catch (const Error& e) {
        errors[i] = SampleError{sample.sample_id, "corrupt", e.what()};
        return;
      }
    }
    Sample out = sample;
    out.image_path = filename;
    outputs[i] = std::move(out);
  });

  CorruptDatasetResult result;
  result.manifest.name = manifest.name + "@" + PlanId(plan);
  result.manifest.root = out_dir;
  result.manifest.provenance = {
      {"source_manifest", manifest.name},
      {"source_provenance", manifest.provenance},
      {"corruption", PlanToJson(plan)},
      {"condition_id", PlanId(plan)},
      {"run_seed", options.run_seed},
      {"sample_seed", options.condition_id ? "hash64(run_seed, sample_id, condition_id)"
                                           : "hash64(run_seed, sample_id)"},
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (outputs[i]) result.manifest.samples.push_back(std::move(*outputs[i]));
    if (errors[i]) result.errors.push_back(std::move(*errors[i]));
    result.reused += reused[i];
  }
  return result;
}

}  // namespace capharness
