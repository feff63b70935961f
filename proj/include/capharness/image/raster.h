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

#ifndef CAPHARNESS_IMAGE_RASTER_H_
#define CAPHARNESS_IMAGE_RASTER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace capharness {

// An 8-bit RGB image, row-major with channels interleaved. Width and height
// are at least 1 and data().size() == width * height * 3 always holds.
class Raster {
 public:
  static constexpr int kChannels = 3;

  // Throws ImageError when a dimension is < 1.
  Raster(int width, int height, uint8_t fill = 0);
  // Throws ImageError when data.size() != width * height * 3.
  Raster(int width, int height, std::vector<uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return kChannels; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }

  std::span<const uint8_t> data() const { return data_; }
  std::span<uint8_t> mutable_data() { return data_; }

  std::size_t Index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * kChannels + c;
  }
  uint8_t at(int x, int y, int c) const { return data_[Index(x, y, c)]; }
  uint8_t& at(int x, int y, int c) { return data_[Index(x, y, c)]; }

  bool operator==(const Raster&) const = default;

 private:
  int width_;
  int height_;
  std::vector<uint8_t> data_;
};

}  // namespace capharness

#endif  // CAPHARNESS_IMAGE_RASTER_H_
