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

#ifndef CAPHARNESS_CORRUPTIONS_CORRUPT_H_
#define CAPHARNESS_CORRUPTIONS_CORRUPT_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "capharness/common/errors.h"
#include "capharness/corruptions/corruption_spec.h"
#include "capharness/image/raster.h"

namespace capharness {

// Applies one corruption. The input is untouched; the result has the same
// dimensions. Pixel math runs on [0, 1] doubles and is re-quantized by
// clamping then rounding half away from zero. jpeg_compression is the
// exception: it round-trips the 8-bit image through libjpeg, and quality 0
// passes the image through unchanged.
//
// Throws UnsupportedCorruptionError or ParameterError.
Raster Apply(const CorruptionSpec& spec, const Raster& image);

// A failure inside ApplyMixture, tagged with the index of the failing step.
class MixtureStepError : public Error {
 public:
  MixtureStepError(std::size_t step, const std::string& message)
      : Error("mixture step " + std::to_string(step) + ": " + message), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

// Left fold of Apply over mix.steps, in list order.
Raster ApplyMixture(const MixtureSpec& mix, const Raster& image);

using CorruptionPlan = std::variant<CorruptionSpec, MixtureSpec>;

std::string PlanId(const CorruptionPlan& plan);
nlohmann::json PlanToJson(const CorruptionPlan& plan);
CorruptionPlan PlanFromJson(const nlohmann::json& j);

// Returns `plan` with its randomness keyed to `seed`. A single spec takes
// the seed directly; mixture step i takes hash64(seed, "step", i).
CorruptionPlan SeedPlan(const CorruptionPlan& plan, uint64_t seed);

Raster ApplyPlan(const CorruptionPlan& plan, const Raster& image);

// True when the plan's last step is a re-encoding jpeg_compression, in which
// case corrupted files are written as JPEG at that quality.
bool PlanWritesJpeg(const CorruptionPlan& plan);

// Encodes the corrupted image in the file format PlanWritesJpeg selects.
// For a JPEG plan the bytes are the final step's own encoding, so decoding
// them reproduces ApplyPlan exactly.
std::vector<uint8_t> ApplyPlanEncoded(const CorruptionPlan& plan, const Raster& image);

// Peak signal-to-noise ratio in dB between equally sized rasters; +inf for
// identical inputs.
double Psnr(const Raster& a, const Raster& b);

}  // namespace capharness

#endif  // CAPHARNESS_CORRUPTIONS_CORRUPT_H_
