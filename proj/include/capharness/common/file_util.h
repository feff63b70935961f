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

#ifndef CAPHARNESS_COMMON_FILE_UTIL_H_
#define CAPHARNESS_COMMON_FILE_UTIL_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace capharness {

std::string ReadFileToString(const std::filesystem::path& path);
std::vector<uint8_t> ReadFileBytes(const std::filesystem::path& path);

// Writes through a sibling temporary file and renames it into place, so a
// reader never observes a partially written file. Creates parent
// directories.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view contents);
void WriteFileAtomic(const std::filesystem::path& path, std::span<const uint8_t> contents);

// Splits on '\n' and strips one trailing '\r' per line. A trailing newline
// does not produce an empty final line.
std::vector<std::string> SplitLines(std::string_view text);

// Trims ASCII whitespace from both ends.
std::string_view TrimAscii(std::string_view s);

// Replaces every byte outside [A-Za-z0-9._-] with '_'.
std::string SanitizeForFilename(std::string_view s);

// Formats `value` with `decimals` fixed digits. The C library rounds the
// exact binary value, ties to even.
std::string FormatFixed(double value, int decimals);

// Shortest decimal form that parses back to the same double.
std::string FormatNumber(double value);

}  // namespace capharness

#endif  // CAPHARNESS_COMMON_FILE_UTIL_H_
