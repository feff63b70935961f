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

#ifndef CAPHARNESS_TEXT_TOKENIZER_H_
#define CAPHARNESS_TEXT_TOKENIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace capharness {

// A caption as the metrics see it: non-empty lowercase tokens without
// punctuation other than intra-word apostrophes.
class TokenSeq {
 public:
  TokenSeq() = default;

  // Wraps already tokenized text. Throws MetricError for empty tokens or
  // tokens containing whitespace or uppercase letters.
  static TokenSeq FromTokens(std::vector<std::string> tokens);

  const std::vector<std::string>& tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const std::string& operator[](std::size_t i) const { return tokens_[i]; }
  auto begin() const { return tokens_.begin(); }
  auto end() const { return tokens_.end(); }

  // Tokens joined by single spaces.
  std::string Join() const;

  bool operator==(const TokenSeq&) const = default;

 private:
  explicit TokenSeq(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {}
  friend TokenSeq Tokenize(std::string_view text);

  std::vector<std::string> tokens_;
};

// The shared metric tokenizer: lowercase, replace every character that is
// not a letter or digit with a space (apostrophes between two letters or
// digits survive, with U+2019 folded to '\''), split on whitespace.
TokenSeq Tokenize(std::string_view text);

}  // namespace capharness

#endif  // CAPHARNESS_TEXT_TOKENIZER_H_
