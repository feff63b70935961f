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

#include "capharness/image/raster.h"

#include <string>

#include "capharness/common/errors.h"

namespace capharness {
namespace {

void CheckDims(int width, int height) {
  if (width < 1 || height < 1) {
    throw ImageError("raster dimensions must be >= 1, got " + std::to_string(width) + "x" +
                     std::to_string(height));
  }
}

}  // namespace

Raster::Raster(int width, int height, uint8_t fill) : width_(width), height_(height) {
  CheckDims(width, height);
  data_.assign(pixel_count() * kChannels, fill);
}

Raster::Raster(int width, int height, std::vector<uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  CheckDims(width, height);
  if (data_.size() != pixel_count() * kChannels) {
    throw ImageError("raster data length " + std::to_string(data_.size()) + " != " +
                     std::to_string(pixel_count() * kChannels));
  }
}

}  // namespace capharness
