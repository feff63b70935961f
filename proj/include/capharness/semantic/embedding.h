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

#ifndef CAPHARNESS_SEMANTIC_EMBEDDING_H_
#define CAPHARNESS_SEMANTIC_EMBEDDING_H_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "capharness/common/errors.h"
#include "capharness/common/http_client.h"

namespace capharness {

using EmbeddingVector = std::vector<double>;

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  // "builtin_hashed_ngram" or "http:<endpoint>".
  virtual std::string Identity() const = 0;
  // 0 until a remote provider has answered once.
  virtual std::size_t dim() const = 0;
  // One vector per text, in input order.
  virtual std::vector<EmbeddingVector> Embed(std::span<const std::string> texts) = 0;
};

// Character trigram counts over the code points of " " + text + " ",
// bucketed by FNV-1a 64 of the trigram's UTF-8 bytes modulo 4096, then
// L2-normalized. Empty text gives the zero vector.
class BuiltinHashedNgramEmbedder final : public EmbeddingProvider {
 public:
  static constexpr std::size_t kDim = 4096;

  static EmbeddingVector EmbedOne(std::string_view text);

  std::string Identity() const override { return "builtin_hashed_ngram"; }
  std::size_t dim() const override { return kDim; }
  std::vector<EmbeddingVector> Embed(std::span<const std::string> texts) override;
};

// A remote failure for the batch covering texts [begin, end).
class EmbeddingBatchError : public ProviderError {
 public:
  EmbeddingBatchError(std::size_t begin, std::size_t end, const std::string& reason);

  std::size_t begin() const { return begin_; }
  std::size_t end() const { return end_; }

 private:
  std::size_t begin_;
  std::size_t end_;
};

struct HttpEmbedderOptions {
  std::size_t batch_size = 32;
  std::size_t max_in_flight = 4;
  HttpCallOptions call;
};

// POST {base}/embed with {"texts": [...]}, expecting
// {"dim": N, "vectors": [[...], ...]}. A failed batch throws
// EmbeddingBatchError (the lowest failing batch when several fail). A
// dimension that disagrees with an earlier answer throws ConfigError.
class HttpEmbedder final : public EmbeddingProvider {
 public:
  HttpEmbedder(std::string_view endpoint, HttpEmbedderOptions options = {});

  std::string Identity() const override;
  std::size_t dim() const override { return dim_; }
  std::vector<EmbeddingVector> Embed(std::span<const std::string> texts) override;

 private:
  std::string url_;
  HttpEndpoint endpoint_;
  HttpEmbedderOptions options_;
  std::size_t dim_ = 0;
};

// "builtin" or "http:<url>". Throws ConfigError.
std::unique_ptr<EmbeddingProvider> MakeEmbedder(std::string_view spec,
                                                HttpEmbedderOptions http_options = {});

// dot(a, b) / (|a| |b|), clamped to [-1, 1]; 0 when either norm is 0.
// Throws MetricError when dimensions differ.
double Cosine(std::span<const double> a, std::span<const double> b);

enum class SimilarityReduction { kMax, kMean };
std::string_view SimilarityReductionName(SimilarityReduction r);
// Throws ConfigError.
SimilarityReduction ParseSimilarityReduction(std::string_view name);

struct SimilarityInput {
  std::string sample_id;
  std::string candidate;
  std::vector<std::string> references;
};

struct SimilarityResult {
  double score = 0.0;
  std::vector<double> per_pair;
};

// Per pair, the cosine between the candidate and each reference reduced by
// `reduction`; a reference string-equal to the candidate counts as exactly
// 1. Each distinct text is embedded once. The corpus value is the mean over
// pairs. Throws MetricError for an empty corpus or a pair without
// references, and propagates provider errors.
SimilarityResult SimilarityCorpus(std::span<const SimilarityInput> pairs,
                                  EmbeddingProvider& provider,
                                  SimilarityReduction reduction = SimilarityReduction::kMax);

}  // namespace capharness

#endif  // CAPHARNESS_SEMANTIC_EMBEDDING_H_
