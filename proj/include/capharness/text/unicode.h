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

#ifndef CAPHARNESS_TEXT_UNICODE_H_
#define CAPHARNESS_TEXT_UNICODE_H_

#include <string>
#include <string_view>

namespace capharness::text {

// Ill-formed UTF-8 sequences decode to U+FFFD.
std::u32string DecodeUtf8(std::string_view utf8);
std::string EncodeUtf8(std::u32string_view text);

// Unicode general category L*.
bool IsLetter(char32_t c);
// Unicode general category Nd.
bool IsDigit(char32_t c);
bool IsWhitespace(char32_t c);
// Simple (single code point) lowercase mapping.
char32_t ToLower(char32_t c);

}  // namespace capharness::text

#endif  // CAPHARNESS_TEXT_UNICODE_H_
