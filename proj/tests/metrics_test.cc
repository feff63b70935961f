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

#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "capharness/common/errors.h"
#include "capharness/metrics/bleu.h"
#include "capharness/metrics/cider.h"
#include "capharness/metrics/corpus.h"
#include "capharness/metrics/eval_pair.h"
#include "capharness/metrics/meteor.h"
#include "capharness/metrics/porter_stemmer.h"
#include "capharness/metrics/rouge.h"
#include "metric_fixtures.h"

namespace capharness {
namespace {

using testing::Pair;

TEST(EvalPairTest, NeedsReferences) {
  EXPECT_THROW(MakeEvalPair("x", "a b", std::vector<std::string>{}), MetricError);
  const EvalPair p = Pair("x", "A, b!", {"c d"});
  EXPECT_EQ(p.candidate.Join(), "a b");
}

TEST(OrderIndependentMeanTest, IgnoresOrder) {
  const std::vector<double> a = {0.1, 1e-17, 0.7, 0.3};
  const std::vector<double> b = {0.3, 0.7, 1e-17, 0.1};
  EXPECT_EQ(OrderIndependentMean(a), OrderIndependentMean(b));
}

TEST(BleuTest, BrevityAnchor) {
  const std::vector<EvalPair> pairs = {Pair("p", "the cat sat", {"the cat sat on the mat"})};
  const BleuResult r = Bleu(pairs);
  EXPECT_NEAR(r.scores[0], std::exp(-1.0), 1e-9);
  EXPECT_EQ(r.testlen, 3u);
  EXPECT_EQ(r.reflen, 6u);
  EXPECT_NEAR(r.brevity_penalty, std::exp(-1.0), 1e-15);
}

TEST(BleuTest, IdentityCorpusIsOne) {
  const std::vector<EvalPair> pairs = {
      Pair("a", "a dog runs on the beach", {"a dog runs on the beach", "a dog"}),
      Pair("b", "two kids fly a red kite", {"two kids fly a red kite"})};
  const BleuResult r = Bleu(pairs);
  for (double s : r.scores) EXPECT_EQ(s, 1.0);
}

TEST(BleuTest, ClosestReferenceLengthTieGoesShorter) {
  const std::vector<EvalPair> pairs = {Pair("p", "a b c d", {"a b c", "a b c d e"})};
  EXPECT_EQ(Bleu(pairs).reflen, 3u);
}

TEST(BleuTest, ClipsByMaxReferenceCount) {
  const std::vector<EvalPair> pairs = {Pair("p", "the the the the", {"the cat", "the the dog"})};
  const BleuResult r = Bleu(pairs, 1);
  EXPECT_EQ(r.matches[0], 2u);
  EXPECT_EQ(r.totals[0], 4u);
}

TEST(BleuTest, CorpusPoolsCountsInsteadOfZeroingSamples) {
  const std::vector<EvalPair> pairs = {
      Pair("a", "a b c d e", {"a b c d e"}),
      Pair("b", "x y z w", {"w z y x"})};
  const BleuResult r = Bleu(pairs);
  EXPECT_GT(r.scores[3], 0.0);
  const oracle::BleuOut o = oracle::Bleu(testing::ToOracle(pairs));
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(r.scores[k], o.bleu[k], 1e-12);
}

TEST(BleuTest, ZeroPrecisionZeroesHigherOrders) {
  const std::vector<EvalPair> pairs = {Pair("p", "a b", {"b a"})};
  const BleuResult r = Bleu(pairs);
  EXPECT_GT(r.scores[0], 0.0);
  EXPECT_EQ(r.scores[1], 0.0);
  EXPECT_EQ(r.scores[3], 0.0);
}

TEST(BleuTest, EmptyCandidates) {
  EXPECT_THROW(Bleu(std::vector<EvalPair>{Pair("p", "", {"a"})}), MetricError);
  EXPECT_THROW(Bleu(std::vector<EvalPair>{}), MetricError);
  const std::vector<EvalPair> mixed = {Pair("p", "", {"a b"}), Pair("q", "a b", {"a b"})};
  const BleuResult r = Bleu(mixed);
  EXPECT_EQ(r.testlen, 2u);
  EXPECT_EQ(r.matches[0], 2u);
}

TEST(PorterStemmerTest, ClassicVocabulary) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"caresses", "caress"}, {"ponies", "poni"},       {"ties", "ti"},
      {"caress", "caress"},   {"cats", "cat"},          {"feed", "feed"},
      {"agreed", "agre"},     {"disabled", "disabl"},   {"matting", "mat"},
      {"mating", "mate"},     {"meeting", "meet"},      {"milling", "mill"},
      {"messing", "mess"},    {"meetings", "meet"},     {"happy", "happi"},
      {"sky", "sky"},         {"relational", "relat"},  {"conditional", "condit"},
      {"rational", "ration"}, {"generalizations", "gener"},
      {"oscillators", "oscil"}, {"running", "run"},     {"runs", "run"},
      {"hopping", "hop"},     {"falling", "fall"},      {"filing", "file"},
      {"abilities", "abil"},  {"absolutely", "absolut"}, {"accordingly", "accordingli"},
      {"adjustable", "adjust"}, {"revival", "reviv"},   {"probate", "probat"},
      {"controlling", "control"}};
  for (const auto& [word, stem] : cases) EXPECT_EQ(PorterStem(word), stem) << word;
}

TEST(PorterStemmerTest, ShortAndNonAsciiWordsUntouched) {
  EXPECT_EQ(PorterStem("is"), "is");
  EXPECT_EQ(PorterStem("as"), "as");
  EXPECT_EQ(PorterStem("cafés"), "cafés");
  EXPECT_EQ(PorterStem("dog's"), "dog's");
}

TEST(MeteorTest, IdentityOfThree) {
  const TokenSeq t = Tokenize("a b c");
  EXPECT_NEAR(MeteorScore(t, t), 1.0 - 1.0 / 54.0, 1e-12);
}

TEST(MeteorTest, ReorderedIdentityIsHalf) {
  EXPECT_NEAR(MeteorScore(Tokenize("the cat sat"), Tokenize("the sat cat")), 0.5, 1e-9);
  const MeteorAlignment a = Align(Tokenize("the cat sat"), Tokenize("the sat cat"));
  EXPECT_EQ(a.matches, 3);
  EXPECT_EQ(a.chunks, 3);
}

TEST(MeteorTest, NoOverlapIsZero) {
  EXPECT_EQ(MeteorScore(Tokenize("red ball"), Tokenize("blue sky")), 0.0);
  EXPECT_EQ(MeteorScore(Tokenize(""), Tokenize("blue sky")), 0.0);
}

TEST(MeteorTest, StemStageMatchesInflections) {
  const TokenSeq cand = Tokenize("dogs running");
  const TokenSeq ref = Tokenize("dog runs");
  MeteorOptions exact_only;
  exact_only.stem = false;
  EXPECT_EQ(MeteorScore(cand, ref, exact_only), 0.0);
  EXPECT_EQ(Align(cand, ref).matches, 2);
}

TEST(MeteorTest, SynonymStage) {
  const SynonymTable table = SynonymTable::Parse("dog hound puppy\n");
  MeteorOptions opts;
  opts.synonyms = &table;
  EXPECT_EQ(Align(Tokenize("a hound"), Tokenize("a dog"), opts).matches, 2);
  EXPECT_EQ(Align(Tokenize("a hound"), Tokenize("a dog")).matches, 1);
}

TEST(MeteorTest, ExactStageWinsOverLaterStages) {
  // "runs" could stem-match "run" but exact "runs" is available.
  const MeteorAlignment a = Align(Tokenize("runs"), Tokenize("run runs"));
  ASSERT_EQ(a.candidate_to_reference.size(), 1u);
  EXPECT_EQ(a.candidate_to_reference[0], 1);
}

TEST(MeteorTest, PrefersFewerCrossings) {
  // Two equal-size alignments; the one without crossings has one chunk.
  const MeteorAlignment a = Align(Tokenize("the cat the mat"), Tokenize("the cat on the mat"));
  EXPECT_EQ(a.matches, 4);
  EXPECT_EQ(CountCrossings(a.candidate_to_reference), 0);
  EXPECT_EQ(a.chunks, 2);
}

TEST(MeteorTest, ChunkAndCrossingCounters) {
  const std::vector<int> a = {0, 1, -1, 3, 2};
  EXPECT_EQ(CountChunks(a), 3);
  EXPECT_EQ(CountCrossings(a), 1);
  EXPECT_EQ(CountChunks(std::vector<int>{-1, -1}), 0);
}

TEST(MeteorTest, CorpusIsMeanOfBestReference) {
  const std::vector<EvalPair> pairs = {Pair("a", "a b c", {"x y", "a b c"}),
                                       Pair("b", "q", {"z"})};
  EXPECT_NEAR(Meteor(pairs), (1.0 - 1.0 / 54.0) / 2.0, 1e-12);
  EXPECT_THROW(Meteor(std::vector<EvalPair>{}), MetricError);
}

TEST(SynonymTableTest, ParseFormats) {
  const SynonymTable t = SynonymTable::Parse("# comment\nkids, children\n\nrug mat carpet # tail\n");
  EXPECT_EQ(t.set_count(), 2u);
  EXPECT_TRUE(t.AreSynonyms("kids", "children"));
  EXPECT_TRUE(t.AreSynonyms("carpet", "rug"));
  EXPECT_FALSE(t.AreSynonyms("kids", "rug"));
  EXPECT_FALSE(t.AreSynonyms("mat", "mat"));
  const SynonymTable loaded = SynonymTable::Load(testing::DataDir() / "synonyms.txt");
  EXPECT_EQ(loaded.set_count(), 3u);
  EXPECT_TRUE(loaded.AreSynonyms("hound", "puppy"));
}

TEST(SynonymTableTest, Errors) {
  try {
    SynonymTable::Parse("a b\nlonely\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.locus(), "line 2");
  }
  EXPECT_THROW(SynonymTable::Parse("ice-cream gelato\n"), ParseError);
  EXPECT_THROW(SynonymTable::Load(testing::DataDir() / "no_such_file.txt"), Error);
}

TEST(RougeTest, Anchor) {
  EXPECT_NEAR(RougeLScore(Tokenize("the cat"), Tokenize("the cat sat")), 0.7722, 1e-4);
  const double p = 1.0, r = 2.0 / 3.0, b2 = 1.44;
  EXPECT_NEAR(RougeLScore(Tokenize("the cat"), Tokenize("the cat sat")),
              (1 + b2) * p * r / (r + b2 * p), 1e-15);
}

TEST(RougeTest, IdentityDisjointAndEmpty) {
  EXPECT_EQ(RougeLScore(Tokenize("a b c"), Tokenize("a b c")), 1.0);
  EXPECT_EQ(RougeLScore(Tokenize("a b"), Tokenize("c d")), 0.0);
  EXPECT_EQ(RougeLScore(Tokenize(""), Tokenize("c d")), 0.0);
  EXPECT_EQ(LcsLength(Tokenize("a x b y c"), Tokenize("a b c")), 3u);
}

TEST(RougeTest, MaxOverReferences) {
  const EvalPair p = Pair("p", "the cat", {"a dog", "the cat sat", "the cat"});
  EXPECT_EQ(SentenceRougeL(p), 1.0);
}

TEST(CiderTest, SingleDocumentIsExactlyZero) {
  const std::vector<EvalPair> pairs = {Pair("p", "a cat on a mat", {"a cat on a mat"})};
  CiderOptions plain;
  plain.variant = CiderVariant::kPlain;
  EXPECT_EQ(Cider(pairs, plain).score, 0.0);
  EXPECT_EQ(Cider(pairs).score, 0.0);
}

TEST(CiderTest, DisjointTwoDocumentIdentity) {
  const std::vector<EvalPair> pairs = {Pair("a", "red ball on grass", {"red ball on grass"}),
                                       Pair("b", "two boats at sea", {"two boats at sea"})};
  CiderOptions plain;
  plain.variant = CiderVariant::kPlain;
  EXPECT_NEAR(Cider(pairs, plain).score, 1.0, 1e-12);
  EXPECT_NEAR(Cider(pairs).score, 10.0, 1e-12);
  EXPECT_NEAR(oracle::CiderPlain(testing::ToOracle(pairs)), 1.0, 1e-12);
}

TEST(CiderTest, NoSharedNgramIsZero) {
  const std::vector<EvalPair> pairs = {Pair("a", "zebra stripes", {"red ball on grass"}),
                                       Pair("b", "two boats at sea", {"two boats at sea"})};
  CiderOptions plain;
  plain.variant = CiderVariant::kPlain;
  EXPECT_EQ(Cider(pairs, plain).per_pair[0], 0.0);
  EXPECT_EQ(Cider(pairs).per_pair[0], 0.0);
}

TEST(CiderTest, LengthPenaltyUsesTokenCounts) {
  const std::vector<EvalPair> pairs = {
      Pair("a", "red ball", {"red ball on the green grass near a fence"}),
      Pair("b", "boats", {"boats"})};
  const double d = Cider(pairs).per_pair[0];
  const double oracle_d = oracle::CiderD(testing::ToOracle({pairs[0], pairs[1]}));
  EXPECT_NEAR((d + Cider(pairs).per_pair[1]) / 2.0, oracle_d, 1e-12);
}

TEST(CiderTest, VariantNames) {
  EXPECT_EQ(ParseCiderVariant("plain"), CiderVariant::kPlain);
  EXPECT_EQ(ParseCiderVariant(CiderVariantName(CiderVariant::kD)), CiderVariant::kD);
  EXPECT_THROW(ParseCiderVariant("r"), ConfigError);
}

TEST(OracleCorpusTest, FivePairCorpusMatchesSlowPath) {
  const std::vector<EvalPair> pairs = testing::LoadCorpus5();
  const std::vector<oracle::Pair> o = testing::ToOracle(pairs);
  const CorpusEvaluation ev = ScoreCorpus(pairs);
  const oracle::BleuOut ob = oracle::Bleu(o);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(ev.corpus.bleu[k], ob.bleu[k], 1e-9) << k;
  EXPECT_EQ(ev.corpus.testlen, ob.testlen);
  EXPECT_EQ(ev.corpus.reflen, ob.reflen);
  EXPECT_NEAR(ev.corpus.meteor, oracle::Meteor(o, true), 1e-9);
  EXPECT_NEAR(ev.corpus.rouge_l, oracle::RougeL(o), 1e-9);
  EXPECT_NEAR(ev.corpus.cider, oracle::CiderD(o), 1e-9);
  EXPECT_NEAR(ev.corpus.cider_plain, oracle::CiderPlain(o), 1e-9);
}

TEST(OracleCorpusTest, FrozenValues) {
  // Produced by the slow-path oracle on corpus5.json.
  const CorpusEvaluation ev = ScoreCorpus(testing::LoadCorpus5());
  EXPECT_NEAR(ev.corpus.bleu[0], 0.77746630002638506, 1e-9);
  EXPECT_NEAR(ev.corpus.bleu[3], 0.35557079894017807, 1e-9);
  EXPECT_NEAR(ev.corpus.meteor, 0.55538614233524486, 1e-9);
  EXPECT_NEAR(ev.corpus.rouge_l, 0.56036730764489451, 1e-9);
  EXPECT_NEAR(ev.corpus.cider, 1.7184889526272316, 1e-9);
  EXPECT_NEAR(ev.corpus.cider_plain, 0.19221689911793471, 1e-9);
  EXPECT_EQ(ev.corpus.testlen, 35u);
  EXPECT_EQ(ev.corpus.reflen, 36u);
}

TEST(OracleCorpusTest, SynonymMeteorMatchesSlowPath) {
  const std::vector<EvalPair> pairs = testing::LoadCorpus5();
  const SynonymTable table = SynonymTable::Load(testing::DataDir() / "synonyms.txt");
  MeteorOptions opts;
  opts.synonyms = &table;
  const std::vector<std::vector<std::string>> sets = {
      {"dog", "hound", "puppy"}, {"kids", "children"}, {"rug", "mat", "carpet"}};
  EXPECT_NEAR(Meteor(pairs, opts), oracle::Meteor(testing::ToOracle(pairs), true, sets), 1e-9);
}

TEST(ScoreCorpusTest, PerSampleRecordsFollowInputOrder) {
  const std::vector<EvalPair> pairs = testing::LoadCorpus5();
  const CorpusEvaluation ev = ScoreCorpus(pairs);
  ASSERT_EQ(ev.samples.size(), pairs.size());
  uint64_t testlen = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    EXPECT_EQ(ev.samples[i].sample_id, pairs[i].sample_id);
    EXPECT_EQ(ev.samples[i].meteor, SentenceMeteor(pairs[i]));
    EXPECT_EQ(ev.samples[i].rouge_l, SentenceRougeL(pairs[i]));
    testlen += ev.samples[i].testlen;
  }
  EXPECT_EQ(testlen, ev.corpus.testlen);
}

TEST(ScoreCorpusTest, WorkerCountDoesNotChangeScores) {
  const std::vector<EvalPair> pairs = testing::LoadCorpus5();
  ScoreOptions many;
  many.workers = 4;
  EXPECT_EQ(ScoreCorpus(pairs).corpus, ScoreCorpus(pairs, many).corpus);
}

TEST(CorpusScoresTest, TableOneRowRoundTrips) {
  CorpusScores s;
  s.bleu = {0.6774, 0.4640, 0.3103, 0.2057};
  s.meteor = 0.2075;
  s.rouge_l = 0.3994;
  s.cider = 0.4794;
  s.testlen = 9371;
  s.reflen = 9554;
  const nlohmann::json j = s;
  EXPECT_EQ(j.get<CorpusScores>(), s);
  EXPECT_EQ(nlohmann::json::parse(j.dump()).get<CorpusScores>(), s);
  EXPECT_EQ(j["testlen"], 9371);
  EXPECT_DOUBLE_EQ(s.Ratio(), 9371.0 / 9554.0);
}

}  // namespace
}  // namespace capharness
