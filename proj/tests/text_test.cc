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

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "capharness/common/errors.h"
#include "capharness/providers/caption_record.h"
#include "capharness/text/normalize.h"
#include "capharness/text/tokenizer.h"
#include "capharness/text/unicode.h"

namespace capharness {
namespace {

std::vector<std::string> Toks(std::string_view s) { return Tokenize(s).tokens(); }

TEST(TokenizerTest, LowercasesAndStripsPunctuation) {
  EXPECT_EQ(Toks("The Cat, sat."), (std::vector<std::string>{"the", "cat", "sat"}));
  EXPECT_EQ(Toks("  a\tb\n c  "), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(Toks("well-lit room"), (std::vector<std::string>{"well", "lit", "room"}));
  EXPECT_TRUE(Toks("").empty());
  EXPECT_TRUE(Toks("!!! ... ,,,").empty());
}

TEST(TokenizerTest, KeepsIntraWordApostrophes) {
  EXPECT_EQ(Toks("the dog's ball"), (std::vector<std::string>{"the", "dog's", "ball"}));
  EXPECT_EQ(Toks("don’t"), (std::vector<std::string>{"don't"}));
  EXPECT_EQ(Toks("'quoted' dogs'"), (std::vector<std::string>{"quoted", "dogs"}));
}

TEST(TokenizerTest, UnicodeLettersAndCase) {
  EXPECT_EQ(Toks("Café ÜBER straße"), (std::vector<std::string>{"café", "über", "straße"}));
  EXPECT_EQ(Toks("два КОТА"), (std::vector<std::string>{"два", "кота"}));
}

TEST(TokenizerTest, JoinAndFromTokens) {
  EXPECT_EQ(Tokenize("A  b C").Join(), "a b c");
  EXPECT_EQ(TokenSeq::FromTokens({"x", "y"}).size(), 2u);
  EXPECT_THROW(TokenSeq::FromTokens({"x", ""}), MetricError);
  EXPECT_THROW(TokenSeq::FromTokens({"X"}), MetricError);
  EXPECT_THROW(TokenSeq::FromTokens({"a b"}), MetricError);
}

TEST(UnicodeTest, InvalidUtf8DecodesToReplacement) {
  const std::u32string s = text::DecodeUtf8("a\xff" "b");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[1], U'�');
  EXPECT_EQ(text::EncodeUtf8(U"é"), "\xc3\xa9");
}

TEST(NormalizeTest, ArtifactFragment) {
  EXPECT_EQ(NormalizeCaption(".\n\n3. **Banana Trees**: ripe fruit"), "banana trees ripe fruit");
}

TEST(NormalizeTest, AlreadyCleanIsFixedPoint) {
  EXPECT_EQ(NormalizeCaption("a dog runs."), "a dog runs.");
}

TEST(NormalizeTest, HashtagsEmphasisAndBang) {
  EXPECT_EQ(NormalizeCaption("#Sunset at the **beach**!"), "sunset at the beach");
}

TEST(NormalizeTest, MoreShapes) {
  EXPECT_EQ(NormalizeCaption(""), "");
  EXPECT_EQ(NormalizeCaption("## Summary\n- a cat\n- a dog"), "summary a cat a dog");
  EXPECT_EQ(NormalizeCaption("1) first\n2) second"), "first second");
  EXPECT_EQ(NormalizeCaption("• bullet, with comma"), "bullet, with comma");
  EXPECT_EQ(NormalizeCaption("   spaced    out   "), "spaced out");
  EXPECT_EQ(NormalizeCaption("3 dogs play"), "3 dogs play");
  EXPECT_EQ(NormalizeCaption("snake_case and `code`"), "snakecase and code");
}

TEST(NormalizeTest, CaseCanBeKept) {
  NormalizeOptions keep;
  keep.lowercase = false;
  EXPECT_EQ(NormalizeCaption("A **Big** Dog", keep), "A Big Dog");
}

TEST(NormalizeTest, ExtraPunctuationIsConfigurable) {
  NormalizeOptions opts;
  opts.kept_punctuation = ",.?";
  EXPECT_EQ(NormalizeCaption("what is this?", opts), "what is this?");
  EXPECT_EQ(NormalizeCaption("what is this?"), "what is this");
}

TEST(NormalizeBatchTest, MatchesElementwiseAndKeepsRaw) {
  EXPECT_TRUE(NormalizeBatch({}).empty());
  std::vector<CaptionRecord> in(3);
  in[0].raw = "**A** cat";
  in[1].raw = "1. dog\n2. bone";
  in[2].raw = "";
  const std::vector<CaptionRecord> out = NormalizeBatch(in);
  ASSERT_EQ(out.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(out[i].raw, in[i].raw);
    EXPECT_EQ(out[i].normalized, NormalizeCaption(in[i].raw));
  }
}

}  // namespace
}  // namespace capharness
