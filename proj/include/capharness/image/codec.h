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

#ifndef CAPHARNESS_IMAGE_CODEC_H_
#define CAPHARNESS_IMAGE_CODEC_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "capharness/image/raster.h"

namespace capharness {

enum class ImageFormat { kPng, kJpeg };

// Decodes PNG or JPEG (sniffed from the magic bytes) into RGB. Gray and
// alpha inputs are converted to RGB. Throws ImageError on anything else.
Raster DecodeImage(std::span<const uint8_t> bytes);
Raster LoadImage(const std::filesystem::path& path);

std::vector<uint8_t> EncodePng(const Raster& image);
// Baseline JPEG with libjpeg defaults (4:2:0 chroma) at `quality` in [1, 100].
std::vector<uint8_t> EncodeJpeg(const Raster& image, int quality);

void SaveImage(const std::filesystem::path& path, const Raster& image,
               ImageFormat format = ImageFormat::kPng, int jpeg_quality = 95);

}  // namespace capharness

#endif  // CAPHARNESS_IMAGE_CODEC_H_
