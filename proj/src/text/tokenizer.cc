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

#include "capharness/text/tokenizer.h"

#include "capharness/common/errors.h"
#include "capharness/text/unicode.h"

namespace capharness {

using text::DecodeUtf8;
using text::EncodeUtf8;
using text::IsDigit;
using text::IsLetter;
using text::IsWhitespace;
using text::ToLower;

namespace {

bool IsWordChar(char32_t c) { return IsLetter(c) || IsDigit(c); }
bool IsApostrophe(char32_t c) { return c == U'\'' || c == U'’'; }

}  // namespace

TokenSeq TokenSeq::FromTokens(std::vector<std::string> tokens) {
  for (const std::string& t : tokens) {
    if (t.empty()) throw MetricError("token sequences may not contain empty tokens");
    for (char32_t c : DecodeUtf8(t)) {
      if (IsWhitespace(c)) throw MetricError("token '" + t + "' contains whitespace");
      if (ToLower(c) != c) throw MetricError("token '" + t + "' is not lowercase");
    }
  }
  return TokenSeq(std::move(tokens));
}

std::string TokenSeq::Join() const {
  std::string out;
  for (const std::string& t : tokens_) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

TokenSeq Tokenize(std::string_view input) {
  std::u32string s = DecodeUtf8(input);
  for (char32_t& c : s) c = ToLower(c);
  std::vector<std::string> tokens;
  std::u32string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(EncodeUtf8(current));
    current.clear();
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char32_t c = s[i];
    if (IsWordChar(c)) {
      current.push_back(c);
    } else if (IsApostrophe(c) && !current.empty() && i + 1 < s.size() && IsWordChar(s[i + 1])) {
      current.push_back(U'\'');
    } else {
      flush();
    }
  }
  flush();
  return TokenSeq(std::move(tokens));
}

}  // namespace capharness
