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

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "capharness/common/errors.h"
#include "capharness/common/file_util.h"
#include "capharness/common/hash.h"
#include "capharness/common/http_client.h"
#include "capharness/common/parallel.h"
#include "capharness/common/rng.h"
#include "test_paths.h"

namespace capharness {
namespace {

TEST(SplitMix64Test, MatchesPublishedSequenceForSeedZero) {
  SplitMix64 sm(0);
  EXPECT_EQ(sm.Next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(sm.Next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(sm.Next(), 0x06c45d188009454fULL);
}

// Straight transcription of the public-domain xoshiro256** step.
uint64_t Rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

TEST(RngTest, MatchesXoshiroReferenceSeededBySplitMix) {
  for (uint64_t seed : {0ULL, 1ULL, 20240917ULL, ~0ULL}) {
    SplitMix64 sm(seed);
    uint64_t s[4] = {sm.Next(), sm.Next(), sm.Next(), sm.Next()};
    Rng rng(seed);
    for (int i = 0; i < 16; ++i) {
      const uint64_t expected = Rotl(s[1] * 5, 7) * 9;
      const uint64_t t = s[1] << 17;
      s[2] ^= s[0];
      s[3] ^= s[1];
      s[1] ^= s[2];
      s[0] ^= s[3];
      s[2] ^= t;
      s[3] = Rotl(s[3], 45);
      ASSERT_EQ(rng.NextU64(), expected) << "seed " << seed << " step " << i;
    }
  }
}

TEST(RngTest, UniformStaysInUnitInterval) {
  Rng rng(7);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.01);
}

TEST(RngTest, NormalMoments) {
  Rng rng(11);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.Normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(RngTest, PoissonMeanSmallAndLarge) {
  for (double mean : {0.5, 4.0, 60.0, 1000.0}) {
    Rng rng(3);
    const int n = 50000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += static_cast<double>(rng.Poisson(mean));
    EXPECT_NEAR(sum / n, mean, 4.0 * std::sqrt(mean / n) + 1e-3) << mean;
  }
  Rng rng(3);
  EXPECT_EQ(rng.Poisson(0.0), 0u);
}

TEST(RngTest, UniformIntBounds) {
  Rng rng(5);
  std::vector<int> seen(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const uint64_t v = rng.UniformInt(7);
    ASSERT_LT(v, 7u);
    ++seen[v];
  }
  for (int c : seen) EXPECT_GT(c, 800);
}

TEST(HashTest, Fnv1aKnownVectors) {
  EXPECT_EQ(Fnv1a64(std::string_view("")), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64(std::string_view("a")), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(Fnv1a64(std::string_view("foobar")), 0x85944171f73967e8ULL);
}

TEST(HashTest, Hash64SeparatesParts) {
  EXPECT_NE(Hash64(1, {"ab", "c"}), Hash64(1, {"a", "bc"}));
  EXPECT_NE(Hash64(1, {"a"}), Hash64(2, {"a"}));
  EXPECT_EQ(Hash64(9, {"x", "y"}), Hash64(9, {"x", "y"}));
}

TEST(HashTest, Sha256AndBase64) {
  EXPECT_EQ(Sha256Hex(std::string_view("abc")),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const std::string text = "foobar";
  const std::vector<uint8_t> bytes(text.begin(), text.end());
  EXPECT_EQ(Base64Encode(bytes), "Zm9vYmFy");
  EXPECT_EQ(Base64Encode(std::vector<uint8_t>{'f'}), "Zg==");
  EXPECT_EQ(Base64Decode("Zm9vYmFy"), "foobar");
  EXPECT_EQ(Base64Decode("Zg=="), "f");
  EXPECT_EQ(Hex64(0xabcULL), "0000000000000abc");
}

TEST(FileUtilTest, FormatNumberRoundTrips) {
  EXPECT_EQ(FormatNumber(0.1), "0.1");
  EXPECT_EQ(FormatNumber(15), "15");
  EXPECT_EQ(FormatNumber(1.06), "1.06");
  for (double v : {0.3, 1.0 / 3.0, 6.02e23, -2.5e-9}) {
    EXPECT_EQ(std::stod(FormatNumber(v)), v);
  }
}

TEST(FileUtilTest, FormatFixed) {
  EXPECT_EQ(FormatFixed(0.6774, 4), "0.6774");
  EXPECT_EQ(FormatFixed(8890.0 / 10000.0, 3), "0.889");
  EXPECT_EQ(FormatFixed(0.0, 4), "0.0000");
}

TEST(FileUtilTest, SplitLinesHandlesCrlfAndTrailingNewline) {
  const auto lines = SplitLines("a\r\nb\nc\n");
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "a");
  EXPECT_EQ(lines[2], "c");
}

TEST(FileUtilTest, SanitizeAndAtomicWrite) {
  EXPECT_EQ(SanitizeForFilename("a/b c:d"), "a_b_c_d");
  const auto dir = testing::ScratchDir("fileutil");
  WriteFileAtomic(dir / "x.txt", std::string_view("hello"));
  EXPECT_EQ(ReadFileToString(dir / "x.txt"), "hello");
  EXPECT_THROW(ReadFileToString(dir / "missing.txt"), Error);
}

TEST(ParallelForTest, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  ParallelFor(hits.size(), 8, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(ParallelForTest, RethrowsWorkerException) {
  EXPECT_THROW(ParallelFor(100, 4,
                           [](std::size_t i) {
                             if (i == 37) throw std::runtime_error("boom");
                           }),
               std::runtime_error);
}

TEST(HttpEndpointTest, Parse) {
  const HttpEndpoint a = ParseHttpEndpoint("http://localhost:8080");
  EXPECT_EQ(a.origin, "http://localhost:8080");
  EXPECT_EQ(a.base_path, "");
  const HttpEndpoint b = ParseHttpEndpoint("http://10.0.0.1:9000/svc/v1/");
  EXPECT_EQ(b.base_path, "/svc/v1");
  EXPECT_EQ(b.Url("/caption"), "http://10.0.0.1:9000/svc/v1/caption");
  EXPECT_THROW(ParseHttpEndpoint("https://example.com"), ConfigError);
  EXPECT_THROW(ParseHttpEndpoint("localhost:80"), ConfigError);
}

TEST(SampleErrorTest, JsonRoundTrip) {
  const SampleError e{"img_1", "caption", "HTTP 500"};
  nlohmann::json j = e;
  EXPECT_EQ(j.get<SampleError>(), e);
}

}  // namespace
}  // namespace capharness
