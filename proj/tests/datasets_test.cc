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

#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "capharness/common/errors.h"
#include "capharness/common/file_util.h"
#include "capharness/common/hash.h"
#include "capharness/corruptions/corrupt.h"
#include "capharness/corruptions/dataset.h"
#include "capharness/datasets/manifest.h"
#include "capharness/image/codec.h"
#include "test_paths.h"

namespace capharness {
namespace {

namespace fs = std::filesystem;

TEST(ManifestTest, NativeJsonlKeepsFileOrder) {
  const std::string text =
      "{\"sample_id\":\"b\",\"image_path\":\"b.png\",\"references\":[\"x y\"]}\n"
      "{\"sample_id\":\"a\",\"image_path\":\"a.png\",\"references\":[\"p\",\"q\"],"
      "\"domain\":\"near_domain\"}\n";
  const Manifest m = ParseManifest(text, ManifestFormat::kNativeJsonl);
  ASSERT_EQ(m.samples.size(), 2u);
  EXPECT_EQ(m.samples[0].sample_id, "b");
  EXPECT_EQ(m.samples[1].references.size(), 2u);
  EXPECT_EQ(m.samples[1].domain, Domain::kNearDomain);
  EXPECT_EQ(m.samples[0].domain, Domain::kUnspecified);
}

TEST(ManifestTest, NativeRoundTripIsByteStable) {
  const fs::path path = testing::DataDir() / "fixture3" / "manifest.jsonl";
  const std::string original = ReadFileToString(path);
  const Manifest m = LoadManifest(path, ManifestFormat::kNativeJsonl);
  EXPECT_EQ(m.name, "fixture3");
  EXPECT_EQ(SerializeManifest(m), original);
  const Manifest again = ParseManifest(SerializeManifest(m), ManifestFormat::kNativeJsonl);
  EXPECT_EQ(SerializeManifest(again), original);
}

TEST(ManifestTest, FlickrGroupsFiveCaptionsPerImage) {
  const Manifest m =
      LoadManifest(testing::DataDir() / "flickr" / "results.csv", ManifestFormat::kFlickrTsv);
  ASSERT_EQ(m.samples.size(), 3u);
  EXPECT_EQ(m.samples[0].sample_id, "1000092795.jpg");
  EXPECT_EQ(m.samples[0].references.size(), 5u);
  EXPECT_EQ(m.samples[0].references[4], "Two friends enjoy time spent together .");
  for (const Sample& s : m.samples) EXPECT_EQ(s.domain, Domain::kUnspecified);
  EXPECT_EQ(m.provenance["source_format"], "flickr_tsv");
}

TEST(ManifestTest, FlickrTokenFileShape) {
  const Manifest m = ParseManifest("x.jpg#0\ta dog\nx.jpg#1\ta hound\n", ManifestFormat::kFlickrTsv);
  ASSERT_EQ(m.samples.size(), 1u);
  EXPECT_EQ(m.samples[0].references.size(), 2u);
}

TEST(ManifestTest, NocapsMapsDomains) {
  const Manifest m = LoadManifest(testing::DataDir() / "nocaps" / "nocaps_val_sample.json",
                                  ManifestFormat::kNocapsJson);
  ASSERT_EQ(m.samples.size(), 3u);
  EXPECT_EQ(m.samples[0].domain, Domain::kInDomain);
  EXPECT_EQ(m.samples[1].domain, Domain::kNearDomain);
  EXPECT_EQ(m.samples[2].domain, Domain::kOutOfDomain);
  EXPECT_EQ(m.samples[0].references.size(), 3u);
  EXPECT_EQ(m.samples[2].image_path, "0036c5ac4d58c6b7.jpg");
}

TEST(ManifestTest, ErrorsCarryLocus) {
  try {
    ParseManifest("{\"sample_id\":\"a\",\"image_path\":\"a\",\"references\":[\"x\"]}\nnot json\n",
                  ManifestFormat::kNativeJsonl);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.locus(), "line 2");
  }
  try {
    ParseManifest("a.jpg|0|one\nbroken line\n", ManifestFormat::kFlickrTsv);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.locus(), "line 2");
  }
  EXPECT_THROW(ParseManifest("{\"images\": []}", ManifestFormat::kNocapsJson), ParseError);
}

TEST(ManifestTest, DuplicateIdsAndEmptyReferencesRejected) {
  const std::string dup =
      "{\"sample_id\":\"a\",\"image_path\":\"a\",\"references\":[\"x\"]}\n"
      "{\"sample_id\":\"a\",\"image_path\":\"b\",\"references\":[\"y\"]}\n";
  EXPECT_THROW(ParseManifest(dup, ManifestFormat::kNativeJsonl), ParseError);
  try {
    ParseManifest("{\"sample_id\":\"lonely\",\"image_path\":\"a\",\"references\":[]}\n",
                  ManifestFormat::kNativeJsonl);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("lonely"), std::string::npos);
  }
  const std::string nocaps =
      R"({"images":[{"id":1,"file_name":"a.jpg"},{"id":2,"file_name":"b.jpg"}],)"
      R"("annotations":[{"image_id":1,"caption":"x"}]})";
  EXPECT_THROW(ParseManifest(nocaps, ManifestFormat::kNocapsJson), ParseError);
}

TEST(LengthStatsTest, SmallCases) {
  Manifest one;
  one.samples.push_back({"s", "s.png", {"a b c"}, Domain::kUnspecified});
  const LengthStats a = CaptionLengthStats(one);
  EXPECT_EQ(a.histogram, (std::map<std::size_t, std::size_t>{{3, 1}}));
  EXPECT_EQ(a.mean, 3.0);
  EXPECT_EQ(a.median, 3.0);

  Manifest two;
  two.samples.push_back({"s", "s.png", {"a b", "a b c d"}, Domain::kUnspecified});
  const LengthStats b = CaptionLengthStats(two);
  EXPECT_EQ(b.mean, 3.0);
  EXPECT_EQ(b.median, 3.0);
  EXPECT_EQ(b.total_references, 2u);

  EXPECT_THROW(CaptionLengthStats(Manifest{}), Error);
}

TEST(LengthStatsTest, NocapsFixtureIsLongerThanFlickr) {
  const LengthStats flickr = CaptionLengthStats(
      LoadManifest(testing::DataDir() / "flickr" / "results.csv", ManifestFormat::kFlickrTsv));
  const LengthStats nocaps =
      CaptionLengthStats(LoadManifest(testing::DataDir() / "nocaps" / "nocaps_val_sample.json",
                                      ManifestFormat::kNocapsJson));
  EXPECT_GT(nocaps.mean, flickr.mean);
  std::size_t total = 0;
  for (const auto& [len, count] : flickr.histogram) total += count;
  EXPECT_EQ(total, 15u);
}

Manifest Fixture3() {
  return LoadManifest(testing::DataDir() / "fixture3" / "manifest.jsonl",
                      ManifestFormat::kNativeJsonl);
}

TEST(CorruptDatasetTest, ZeroSigmaCopiesEverySample) {
  const fs::path out = testing::ScratchDir("corrupt_identity");
  const Manifest src = Fixture3();
  const CorruptionPlan plan =
      CorruptionSpec::Resolve(CorruptionKind::kGaussianNoise, Severity::kHigh, {{"sigma", 0}});
  const CorruptDatasetResult r = CorruptDataset(src, plan, out);
  ASSERT_EQ(r.manifest.samples.size(), 3u);
  EXPECT_TRUE(r.errors.empty());
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(r.manifest.samples[i].sample_id, src.samples[i].sample_id);
    EXPECT_EQ(r.manifest.samples[i].references, src.samples[i].references);
    EXPECT_EQ(LoadImage(r.manifest.ResolveImage(r.manifest.samples[i])),
              LoadImage(src.ResolveImage(src.samples[i])));
  }
}

TEST(CorruptDatasetTest, RerunIsByteIdenticalAcrossWorkerCounts) {
  const Manifest src = Fixture3();
  const CorruptionPlan plan = CorruptionSpec::Resolve(CorruptionKind::kSpeckleNoise,
                                                      Severity::kMedium);
  CorruptDatasetOptions one;
  one.run_seed = 5;
  CorruptDatasetOptions many = one;
  many.workers = 4;
  const fs::path a = testing::ScratchDir("corrupt_a");
  const fs::path b = testing::ScratchDir("corrupt_b");
  const CorruptDatasetResult ra = CorruptDataset(src, plan, a, one);
  const CorruptDatasetResult rb = CorruptDataset(src, plan, b, many);
  ASSERT_EQ(ra.manifest.samples.size(), rb.manifest.samples.size());
  for (std::size_t i = 0; i < ra.manifest.samples.size(); ++i) {
    EXPECT_EQ(ra.manifest.samples[i].image_path, rb.manifest.samples[i].image_path);
    EXPECT_EQ(ReadFileBytes(ra.manifest.ResolveImage(ra.manifest.samples[i])),
              ReadFileBytes(rb.manifest.ResolveImage(rb.manifest.samples[i])));
  }
  const CorruptDatasetResult again = CorruptDataset(src, plan, a, one);
  EXPECT_EQ(again.reused, 3u);
}

TEST(CorruptDatasetTest, UndecodableImageBecomesSampleError) {
  const Manifest src = LoadManifest(testing::DataDir() / "fixture3" / "manifest_with_corrupt.jsonl",
                                    ManifestFormat::kNativeJsonl);
  const CorruptionPlan plan = CorruptionSpec::Resolve(CorruptionKind::kPixelate, Severity::kLow);
  const CorruptDatasetResult r = CorruptDataset(src, plan, testing::ScratchDir("corrupt_err"));
  ASSERT_EQ(r.manifest.samples.size(), 2u);
  EXPECT_EQ(r.manifest.samples[0].sample_id, "img_a");
  EXPECT_EQ(r.manifest.samples[1].sample_id, "img_c");
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].sample_id, "img_x");
  EXPECT_EQ(r.errors[0].stage, "corrupt");
}

TEST(CorruptDatasetTest, EmptyManifestGivesEmptyManifest) {
  Manifest empty;
  empty.name = "nothing";
  const CorruptDatasetResult r =
      CorruptDataset(empty, CorruptionSpec::Resolve(CorruptionKind::kSnow, Severity::kLow),
                     testing::ScratchDir("corrupt_empty"));
  EXPECT_TRUE(r.manifest.samples.empty());
  EXPECT_TRUE(r.errors.empty());
}

TEST(CorruptDatasetTest, ProvenanceRecordsPlanAndSeeds) {
  const Manifest src = Fixture3();
  const CorruptionPlan plan = CorruptionSpec::Resolve(CorruptionKind::kSnow, Severity::kHigh);
  CorruptDatasetOptions options;
  options.run_seed = 9;
  options.condition_id = "snow/high";
  const CorruptDatasetResult r =
      CorruptDataset(src, plan, testing::ScratchDir("corrupt_prov"), options);
  EXPECT_EQ(r.manifest.provenance["corruption"], PlanToJson(plan));
  EXPECT_EQ(r.manifest.provenance["run_seed"], 9u);
  EXPECT_EQ(r.manifest.name, "fixture3@snow/high");
}

TEST(SampleSeedTest, DependsOnEveryInput) {
  EXPECT_EQ(SampleSeed(1, "a"), Hash64(1, {"a"}));
  EXPECT_EQ(SampleSeed(1, "a", std::string("c")), Hash64(1, {"a", "c"}));
  EXPECT_NE(SampleSeed(1, "a"), SampleSeed(2, "a"));
  EXPECT_NE(SampleSeed(1, "a"), SampleSeed(1, "b"));
  EXPECT_NE(SampleSeed(1, "a", std::string("x")), SampleSeed(1, "a", std::string("y")));
}

}  // namespace
}  // namespace capharness
