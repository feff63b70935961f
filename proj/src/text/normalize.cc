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

#include "capharness/text/normalize.h"

#include "capharness/text/unicode.h"

namespace capharness {

using text::DecodeUtf8;
using text::EncodeUtf8;
using text::IsDigit;
using text::IsLetter;
using text::IsWhitespace;
using text::ToLower;

namespace {

bool IsLineBreak(char32_t c) {
  return c == U'\n' || c == U'\r' || c == U'\v' || c == U'\f' || c == 0x85 || c == 0x2028 ||
         c == 0x2029;
}

bool IsAsciiDigit(char32_t c) { return c >= U'0' && c <= U'9'; }

bool IsEmphasisMark(char32_t c) { return c == U'*' || c == U'_' || c == U'`'; }

std::vector<std::u32string> SplitLines(const std::u32string& s) {
  std::vector<std::u32string> lines(1);
  for (char32_t c : s) {
    if (IsLineBreak(c)) {
      lines.emplace_back();
    } else {
      lines.back().push_back(c);
    }
  }
  return lines;
}

std::size_t SkipSpace(const std::u32string& line, std::size_t i) {
  while (i < line.size() && IsWhitespace(line[i])) ++i;
  return i;
}

std::u32string StripMarkdown(const std::u32string& line) {
  std::u32string out;
  std::size_t i = SkipSpace(line, 0);
  out.append(line, 0, i);
  // Header marks: "## Title".
  std::size_t j = i;
  while (j < line.size() && line[j] == U'#') ++j;
  if (j > i && (j == line.size() || IsWhitespace(line[j]))) i = j;
  const std::size_t content_start = i;
  while (i < line.size()) {
    const char32_t c = line[i];
    if (!IsEmphasisMark(c)) {
      out.push_back(c);
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < line.size() && line[end] == c) ++end;
    const bool bullet = c == U'*' && end - i == 1 && SkipSpace(line, content_start) == i &&
                        end < line.size() && IsWhitespace(line[end]);
    if (bullet) out.append(line, i, end - i);
    i = end;
  }
  return out;
}

std::u32string StripListPrefix(const std::u32string& line) {
  std::size_t i = SkipSpace(line, 0);
  std::size_t j = i;
  if (j < line.size() && IsAsciiDigit(line[j])) {
    while (j < line.size() && IsAsciiDigit(line[j])) ++j;
    if (j < line.size() && (line[j] == U'.' || line[j] == U')')) {
      ++j;
    } else {
      return line;
    }
  } else if (j < line.size() && (line[j] == U'-' || line[j] == U'*' || line[j] == U'•')) {
    ++j;
  } else {
    return line;
  }
  if (j >= line.size() || !IsWhitespace(line[j])) return line;
  return line.substr(SkipSpace(line, j));
}

std::u32string NormalizeOnce(const std::u32string& input, const NormalizeOptions& options,
                             const std::u32string& kept) {
  std::u32string joined;
  bool first = true;
  for (const std::u32string& line : SplitLines(input)) {
    if (!first) joined.push_back(U' ');
    first = false;
    joined += StripListPrefix(StripMarkdown(line));
  }

  std::u32string collapsed;
  bool pending_space = false;
  for (char32_t c : joined) {
    if (IsWhitespace(c)) {
      pending_space = true;
      continue;
    }
    if (!IsLetter(c) && !IsDigit(c) && kept.find(c) == std::u32string::npos) continue;
    if (pending_space && !collapsed.empty()) collapsed.push_back(U' ');
    pending_space = false;
    collapsed.push_back(c);
  }

  std::size_t start = 0;
  while (start < collapsed.size() &&
         (collapsed[start] == U' ' || kept.find(collapsed[start]) != std::u32string::npos)) {
    ++start;
  }
  std::u32string out = collapsed.substr(start);
  if (options.lowercase) {
    for (char32_t& c : out) c = ToLower(c);
  }
  return out;
}

}  // namespace

std::string NormalizeCaption(std::string_view raw, const NormalizeOptions& options) {
  const std::u32string kept = DecodeUtf8(options.kept_punctuation);
  std::u32string current = DecodeUtf8(raw);
  for (;;) {
    std::u32string next = NormalizeOnce(current, options, kept);
    if (next == current) break;
    current = std::move(next);
  }
  return EncodeUtf8(current);
}

std::vector<CaptionRecord> NormalizeBatch(std::vector<CaptionRecord> records,
                                          const NormalizeOptions& options) {
  for (CaptionRecord& r : records) r.normalized = NormalizeCaption(r.raw, options);
  return records;
}

}  // namespace capharness
