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

#include "capharness/image/codec.h"

#include <png.h>
// jpeglib.h needs size_t and FILE declared first.
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <string>

#include <jpeglib.h>

#include "capharness/common/errors.h"
#include "capharness/common/file_util.h"

namespace capharness {
namespace {

bool IsPng(std::span<const uint8_t> b) {
  static constexpr uint8_t kMagic[] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
  return b.size() >= 8 && std::memcmp(b.data(), kMagic, 8) == 0;
}

bool IsJpeg(std::span<const uint8_t> b) {
  return b.size() >= 3 && b[0] == 0xFF && b[1] == 0xD8 && b[2] == 0xFF;
}

Raster DecodePng(std::span<const uint8_t> bytes) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw ImageError(std::string("png decode failed: ") + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  if (image.width == 0 || image.height == 0) {
    png_image_free(&image);
    throw ImageError("png has zero dimension");
  }
  std::vector<uint8_t> data(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, data.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw ImageError("png decode failed: " + message);
  }
  return Raster(static_cast<int>(image.width), static_cast<int>(image.height), std::move(data));
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void JpegErrorExit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

void JpegSilence(j_common_ptr, int) {}

// Returns false and fills `error` on failure. Kept free of objects with
// non-trivial destructors between setjmp and the libjpeg calls.
bool DecodeJpegRaw(std::span<const uint8_t> bytes, std::vector<uint8_t>* out, int* width,
                   int* height, std::string* error) {
  jpeg_decompress_struct cinfo;
  JpegErrorManager jerr;
  cinfo.err = jpeg_std_error(&jerr.base);
  jerr.base.error_exit = JpegErrorExit;
  jerr.base.emit_message = JpegSilence;
  if (setjmp(jerr.jump)) {
    *error = jerr.message;
    jpeg_destroy_decompress(&cinfo);
    return false;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  *width = static_cast<int>(cinfo.output_width);
  *height = static_cast<int>(cinfo.output_height);
  const std::size_t stride = static_cast<std::size_t>(cinfo.output_width) * 3;
  out->resize(stride * cinfo.output_height);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = out->data() + stride * cinfo.output_scanline;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return true;
}

bool EncodeJpegRaw(const Raster& image, int quality, unsigned char** buffer, unsigned long* size,
                   std::string* error) {
  jpeg_compress_struct cinfo;
  JpegErrorManager jerr;
  cinfo.err = jpeg_std_error(&jerr.base);
  jerr.base.error_exit = JpegErrorExit;
  jerr.base.emit_message = JpegSilence;
  if (setjmp(jerr.jump)) {
    *error = jerr.message;
    jpeg_destroy_compress(&cinfo);
    return false;
  }
  jpeg_create_compress(&cinfo);
  jpeg_mem_dest(&cinfo, buffer, size);
  cinfo.image_width = static_cast<JDIMENSION>(image.width());
  cinfo.image_height = static_cast<JDIMENSION>(image.height());
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  const std::size_t stride = static_cast<std::size_t>(image.width()) * 3;
  // libjpeg takes non-const rows but does not write through them.
  auto* base = const_cast<uint8_t*>(image.data().data());
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW row = base + stride * cinfo.next_scanline;
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
  return true;
}

}  // namespace

Raster DecodeImage(std::span<const uint8_t> bytes) {
  if (IsPng(bytes)) return DecodePng(bytes);
  if (IsJpeg(bytes)) {
    std::vector<uint8_t> data;
    int width = 0;
    int height = 0;
    std::string error;
    if (!DecodeJpegRaw(bytes, &data, &width, &height, &error)) {
      throw ImageError("jpeg decode failed: " + error);
    }
    return Raster(width, height, std::move(data));
  }
  throw ImageError("unrecognized image format (expected PNG or JPEG)");
}

Raster LoadImage(const std::filesystem::path& path) {
  const std::vector<uint8_t> bytes = ReadFileBytes(path);
  try {
    return DecodeImage(bytes);
  } catch (const ImageError& e) {
    throw ImageError(path.string() + ": " + e.what());
  }
}

std::vector<uint8_t> EncodePng(const Raster& image) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width());
  png.height = static_cast<png_uint_32>(image.height());
  png.format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_get_memory_size(png, size, 0, image.data().data(), 0, nullptr)) {
    throw ImageError(std::string("png encode failed: ") + png.message);
  }
  std::vector<uint8_t> out(size);
  if (!png_image_write_to_memory(&png, out.data(), &size, 0, image.data().data(), 0, nullptr)) {
    throw ImageError(std::string("png encode failed: ") + png.message);
  }
  out.resize(size);
  return out;
}

std::vector<uint8_t> EncodeJpeg(const Raster& image, int quality) {
  if (quality < 1 || quality > 100) {
    throw ParameterError("jpeg quality must be in [1, 100], got " + std::to_string(quality));
  }
  unsigned char* buffer = nullptr;
  unsigned long size = 0;
  std::string error;
  const bool ok = EncodeJpegRaw(image, quality, &buffer, &size, &error);
  std::vector<uint8_t> out;
  if (ok) out.assign(buffer, buffer + size);
  std::free(buffer);
  if (!ok) throw ImageError("jpeg encode failed: " + error);
  return out;
}

void SaveImage(const std::filesystem::path& path, const Raster& image, ImageFormat format,
               int jpeg_quality) {
  const std::vector<uint8_t> bytes =
      format == ImageFormat::kPng ? EncodePng(image) : EncodeJpeg(image, jpeg_quality);
  WriteFileAtomic(path, bytes);
}

}  // namespace capharness
