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
#include <chrono>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "capharness/common/errors.h"
#include "capharness/datasets/manifest.h"
#include "capharness/providers/caption_record.h"
#include "capharness/providers/decoding.h"
#include "capharness/providers/file_provider.h"
#include "capharness/providers/http_provider.h"
#include "json.hpp"
#include "stub_server.h"
#include "test_paths.h"

namespace capharness {
namespace {

using nlohmann::json;

TEST(FileProviderTest, ParsesValidLines) {
  const std::string text =
      R"({"sample_id": "a", "caption": "A dog."})"
      "\n\n"
      R"({"sample_id": "b", "caption": "Two cats", "prompt_tier": "reasoning", "condition_id": "snow/high"})"
      "\n";
  const auto records = ParseCaptionFile(text, "m1");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].sample_id, "a");
  EXPECT_EQ(records[0].raw, "A dog.");
  EXPECT_EQ(records[0].model_id, "m1");
  EXPECT_EQ(records[0].prompt_tier, PromptTier::kBasic);
  EXPECT_EQ(records[0].condition_id, "clean");
  EXPECT_EQ(records[0].normalized, "");
  EXPECT_EQ(records[1].prompt_tier, PromptTier::kReasoning);
  EXPECT_EQ(records[1].condition_id, "snow/high");
}

TEST(FileProviderTest, ConditionIdKeptVerbatim) {
  const auto records =
      ParseCaptionFile(R"({"sample_id": "a", "caption": "x", "condition_id": "Custom Thing[x=1]"})",
                       "m");
  EXPECT_EQ(records.at(0).condition_id, "Custom Thing[x=1]");
}

TEST(FileProviderTest, ReportsEveryBadLine) {
  const std::string text =
      R"({"sample_id": "a", "caption": "ok"})"
      "\n"
      R"({"sample_id": "b"})"
      "\n"
      "not json\n"
      R"({"sample_id": "a", "caption": "again"})"
      "\n";
  try {
    ParseCaptionFile(text, "m");
    FAIL();
  } catch (const CaptionFileError& e) {
    EXPECT_EQ(e.locus(), "line 2");
    ASSERT_EQ(e.errors().size(), 3u);
    EXPECT_EQ(e.errors()[0].line, 2);
    EXPECT_NE(e.errors()[0].message.find("caption"), std::string::npos);
    EXPECT_EQ(e.errors()[1].line, 3);
    EXPECT_EQ(e.errors()[2].line, 4);
    EXPECT_NE(e.errors()[2].message.find("duplicate"), std::string::npos);
  }
}

TEST(FileProviderTest, SameSampleUnderDifferentConditionsIsAllowed) {
  const std::string text =
      R"({"sample_id": "a", "caption": "x"})"
      "\n"
      R"({"sample_id": "a", "caption": "y", "condition_id": "snow/low"})"
      "\n"
      R"({"sample_id": "a", "caption": "z", "prompt_tier": "descriptive"})";
  EXPECT_EQ(ParseCaptionFile(text, "m").size(), 3u);
}

TEST(FileProviderTest, BadTierAndEmptyCondition) {
  EXPECT_THROW(ParseCaptionFile(R"({"sample_id": "a", "caption": "x", "prompt_tier": "fancy"})", "m"),
               CaptionFileError);
  EXPECT_THROW(ParseCaptionFile(R"({"sample_id": "a", "caption": "x", "condition_id": ""})", "m"),
               CaptionFileError);
}

TEST(FileProviderTest, SerializeRoundTrip) {
  const std::string text =
      R"({"sample_id": "a", "caption": "A \"quoted\" dog\nwith newline"})"
      "\n"
      R"({"sample_id": "b", "caption": "x", "prompt_tier": "descriptive", "condition_id": "jpeg/low"})";
  const auto records = ParseCaptionFile(text, "m");
  const std::string serialized = SerializeCaptionFile(records);
  EXPECT_EQ(ParseCaptionFile(serialized, "m"), records);
  EXPECT_EQ(SerializeCaptionFile(ParseCaptionFile(serialized, "m")), serialized);
}

TEST(FileProviderTest, MissingFile) {
  EXPECT_THROW(CaptionsFromFile(testing::ScratchDir("nofile") / "absent.jsonl", "m"), Error);
}

TEST(PromptTierTest, NamesAndTemplates) {
  for (PromptTier t : {PromptTier::kBasic, PromptTier::kDescriptive, PromptTier::kReasoning}) {
    EXPECT_EQ(ParsePromptTier(PromptTierName(t)), t);
  }
  EXPECT_EQ(DefaultPromptTemplate(PromptTier::kReasoning),
            "What is happening in the image and why?");
  EXPECT_NE(DefaultPromptTemplate(PromptTier::kBasic),
            DefaultPromptTemplate(PromptTier::kDescriptive));
  EXPECT_THROW(ParsePromptTier("Basic"), ParseError);
}

TEST(DecodingTest, DefaultsAndValidation) {
  DecodingParams d;
  EXPECT_NO_THROW(d.Validate());
  EXPECT_EQ(json(d), json::parse(R"({"temperature":0.0,"top_k":0,"beam_size":3,"max_tokens":64})"));
  EXPECT_EQ(json::parse(R"({"beam_size": 5})").get<DecodingParams>().beam_size, 5);
  EXPECT_THROW(json::parse(R"({"temperature": -1})").get<DecodingParams>(), ParameterError);
  EXPECT_THROW(json::parse(R"({"beam_size": 0})").get<DecodingParams>(), ParameterError);
  EXPECT_THROW(json::parse(R"({"max_tokens": 0})").get<DecodingParams>(), ParameterError);
  EXPECT_THROW(json::parse(R"({"top_k": -2})").get<DecodingParams>(), ParameterError);
  EXPECT_THROW(json::parse(R"({"top_p": 0.9})").get<DecodingParams>(), ConfigError);
  EXPECT_THROW(json::parse(R"({"beam_size": "x"})").get<DecodingParams>(), ConfigError);
}

std::vector<CaptionImage> Fixture3Images() {
  const auto dir = testing::DataDir() / "fixture3";
  return {{"img_a", dir / "img_a.png"}, {"img_b", dir / "img_b.png"}, {"img_c", dir / "img_c.png"}};
}

HttpCaptionOptions Fast(std::size_t concurrency = 4) {
  HttpCaptionOptions o;
  o.concurrency = concurrency;
  o.call.retries = 0;
  o.call.timeout = std::chrono::milliseconds(5000);
  return o;
}

TEST(HttpProviderTest, RequestBodyShape) {
  DecodingParams d;
  d.beam_size = 4;
  const json body = CaptionRequestBody("QUJD", "Describe the image.", d, "blip2");
  EXPECT_EQ(body, json::parse(R"({"image_b64":"QUJD","prompt":"Describe the image.",
      "temperature":0.0,"top_k":0,"beam_size":4,"max_tokens":64,"model_id":"blip2"})"));
}

TEST(HttpProviderTest, EchoStubCaptionsEveryImage) {
  testing::StubServer stub;
  std::mutex mu;
  std::vector<json> bodies;
  stub.server().Post("/caption", [&](const httplib::Request& req, httplib::Response& res) {
    {
      std::lock_guard<std::mutex> lock(mu);
      bodies.push_back(json::parse(req.body));
    }
    res.set_content(R"({"caption": "a photo"})", "application/json");
  });
  stub.Start();
  const auto images = Fixture3Images();
  const HttpCaptionResult r = CaptionsFromHttp(stub.url(), images, PromptTier::kBasic,
                                               DecodingParams{}, "echo", "snow/low", Fast());
  EXPECT_TRUE(r.errors.empty());
  EXPECT_FALSE(r.run_error);
  ASSERT_EQ(r.records.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(r.records[i].sample_id, images[i].sample_id);
    EXPECT_EQ(r.records[i].raw, "a photo");
    EXPECT_EQ(r.records[i].model_id, "echo");
    EXPECT_EQ(r.records[i].condition_id, "snow/low");
    EXPECT_TRUE(r.records[i].latency_ms.has_value());
  }
  ASSERT_EQ(bodies.size(), 3u);
  for (const json& b : bodies) {
    EXPECT_EQ(b["prompt"], "Describe the image.");
    EXPECT_EQ(b["model_id"], "echo");
    EXPECT_EQ(b["beam_size"], 3);
    EXPECT_FALSE(b["image_b64"].get<std::string>().empty());
  }
}

TEST(HttpProviderTest, ReasoningTierPrompt) {
  testing::StubServer stub;
  std::string prompt;
  stub.server().Post("/caption", [&](const httplib::Request& req, httplib::Response& res) {
    prompt = json::parse(req.body)["prompt"];
    res.set_content(R"({"caption": "x"})", "application/json");
  });
  stub.Start();
  const auto images = Fixture3Images();
  const std::vector<CaptionImage> one(images.begin(), images.begin() + 1);
  CaptionsFromHttp(stub.url(), one, PromptTier::kReasoning, DecodingParams{}, "m", "clean", Fast());
  EXPECT_EQ(prompt, "What is happening in the image and why?");
}

TEST(HttpProviderTest, OneFailingSampleDoesNotStopOthers) {
  testing::StubServer stub;
  std::atomic<int> calls{0};
  stub.server().Post("/caption", [&](const httplib::Request&, httplib::Response& res) {
    if (++calls == 2) {
      res.status = 500;
      return;
    }
    res.set_content(R"({"caption": "ok"})", "application/json");
  });
  stub.Start();
  const HttpCaptionResult r = CaptionsFromHttp(stub.url(), Fixture3Images(), PromptTier::kBasic,
                                               DecodingParams{}, "m", "clean", Fast(1));
  EXPECT_EQ(r.records.size(), 2u);
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].sample_id, "img_b");
  EXPECT_EQ(r.errors[0].stage, "caption");
  EXPECT_FALSE(r.run_error);
}

TEST(HttpProviderTest, OrderPreservedUnderConcurrency) {
  testing::StubServer stub;
  stub.server().Post("/caption", [&](const httplib::Request& req, httplib::Response& res) {
    // Earlier requests answer later; the image bytes identify the sample.
    const std::string b64 = json::parse(req.body)["image_b64"];
    std::this_thread::sleep_for(std::chrono::milliseconds(b64.size() % 40));
    res.set_content(json{{"caption", std::to_string(b64.size())}}.dump(), "application/json");
  });
  stub.Start();
  std::vector<CaptionImage> images;
  const auto base = Fixture3Images();
  for (int k = 0; k < 4; ++k) {
    for (const auto& im : base) images.push_back({im.sample_id + std::to_string(k), im.path});
  }
  const HttpCaptionResult r = CaptionsFromHttp(stub.url(), images, PromptTier::kBasic,
                                               DecodingParams{}, "m", "clean", Fast(8));
  ASSERT_EQ(r.records.size(), images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    EXPECT_EQ(r.records[i].sample_id, images[i].sample_id);
    EXPECT_EQ(r.records[i].raw, r.records[i % 3].raw);
  }
}

TEST(HttpProviderTest, MalformedResponseIsSampleError) {
  testing::StubServer stub;
  stub.server().Post("/caption", [&](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"text": "wrong key"})", "application/json");
  });
  stub.Start();
  const HttpCaptionResult r = CaptionsFromHttp(stub.url(), Fixture3Images(), PromptTier::kBasic,
                                               DecodingParams{}, "m", "clean", Fast());
  EXPECT_TRUE(r.records.empty());
  EXPECT_EQ(r.errors.size(), 3u);
  EXPECT_NE(r.errors[0].message.find("malformed"), std::string::npos);
}

TEST(HttpProviderTest, UnreadableImageIsSampleError) {
  testing::StubServer stub;
  stub.server().Post("/caption", [&](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"caption": "ok"})", "application/json");
  });
  stub.Start();
  const std::vector<CaptionImage> images = {
      {"bad", testing::DataDir() / "fixture3" / "corrupt.png"}, Fixture3Images()[0]};
  const HttpCaptionResult r = CaptionsFromHttp(stub.url(), images, PromptTier::kBasic,
                                               DecodingParams{}, "m", "clean", Fast());
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].sample_id, "bad");
  EXPECT_EQ(r.errors[0].stage, "image");
  EXPECT_EQ(r.records.size(), 1u);
}

TEST(HttpProviderTest, UnreachableServiceListsMissingSamples) {
  const HttpCaptionResult r = CaptionsFromHttp(testing::UnusedUrl(), Fixture3Images(),
                                               PromptTier::kBasic, DecodingParams{}, "m", "clean",
                                               Fast());
  EXPECT_TRUE(r.records.empty());
  ASSERT_TRUE(r.run_error.has_value());
  EXPECT_NE(r.run_error->find("img_a, img_b, img_c"), std::string::npos);
  EXPECT_EQ(r.missing, (std::vector<std::string>{"img_a", "img_b", "img_c"}));
}

TEST(HttpProviderTest, ManifestOverloadUsesCleanImages) {
  testing::StubServer stub;
  stub.server().Post("/caption", [&](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"caption": "ok"})", "application/json");
  });
  stub.Start();
  const Manifest m = LoadManifest(testing::DataDir() / "fixture3" / "manifest.jsonl", ManifestFormat::kNativeJsonl);
  const HttpCaptionResult r =
      CaptionsFromHttp(stub.url(), m, PromptTier::kDescriptive, DecodingParams{}, "m", Fast());
  ASSERT_EQ(r.records.size(), 3u);
  EXPECT_EQ(r.records[2].condition_id, "clean");
  EXPECT_EQ(r.records[2].prompt_tier, PromptTier::kDescriptive);
}

TEST(HttpProviderTest, InvalidDecodingRejectedBeforeSending) {
  DecodingParams d;
  d.beam_size = 0;
  EXPECT_THROW(CaptionsFromHttp(testing::UnusedUrl(), Fixture3Images(), PromptTier::kBasic, d,
                                "m", "clean", Fast()),
               ParameterError);
}

TEST(HealthTest, ModelListShapes) {
  testing::StubServer stub;
  stub.server().Get("/health", [](const httplib::Request& req, httplib::Response& res) {
    (void)req;
    res.set_content(R"({"status":"ok","models":[{"model_id":"blip2"},"llava"]})",
                    "application/json");
  });
  stub.Start();
  HttpCallOptions call;
  call.retries = 0;
  EXPECT_EQ(ServiceModels(stub.url(), call), (std::vector<std::string>{"blip2", "llava"}));
  EXPECT_THROW(ServiceModels(testing::UnusedUrl(), call), ProviderError);
}

TEST(HealthTest, RejectsNonList) {
  testing::StubServer stub;
  stub.server().Get("/health", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"status":"ok"})", "application/json");
  });
  stub.Start();
  HttpCallOptions call;
  call.retries = 0;
  EXPECT_THROW(ServiceModels(stub.url(), call), ProviderError);
}

}  // namespace
}  // namespace capharness
