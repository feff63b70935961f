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

#include "capharness/semantic/embedding.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include "capharness/common/hash.h"
#include "capharness/common/json_util.h"
#include "capharness/common/parallel.h"
#include "capharness/metrics/eval_pair.h"
#include "capharness/text/unicode.h"
#include "json.hpp"

namespace capharness {

EmbeddingVector BuiltinHashedNgramEmbedder::EmbedOne(std::string_view text) {
  EmbeddingVector v(kDim, 0.0);
  std::u32string padded = U" ";
  padded += text::DecodeUtf8(text);
  padded += U' ';
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
    const std::string gram = text::EncodeUtf8(std::u32string_view(padded).substr(i, 3));
    v[Fnv1a64(gram) % kDim] += 1.0;
  }
  double sq = 0.0;
  for (double x : v) sq += x * x;
  if (sq > 0.0) {
    const double norm = std::sqrt(sq);
    for (double& x : v) x /= norm;
  }
  return v;
}

std::vector<EmbeddingVector> BuiltinHashedNgramEmbedder::Embed(
    std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const std::string& t : texts) out.push_back(EmbedOne(t));
  return out;
}

EmbeddingBatchError::EmbeddingBatchError(std::size_t begin, std::size_t end,
                                         const std::string& reason)
    : ProviderError("embedding batch [" + std::to_string(begin) + ", " + std::to_string(end) +
                    "): " + reason),
      begin_(begin),
      end_(end) {}

HttpEmbedder::HttpEmbedder(std::string_view endpoint, HttpEmbedderOptions options)
    : url_(endpoint), endpoint_(ParseHttpEndpoint(endpoint)), options_(options) {
  if (options_.batch_size == 0) throw ConfigError("embedding batch size must be positive");
  if (options_.max_in_flight == 0) options_.max_in_flight = 1;
}

std::string HttpEmbedder::Identity() const { return "http:" + url_; }

namespace {

struct BatchAnswer {
  std::size_t dim = 0;
  std::vector<EmbeddingVector> vectors;
  std::optional<std::string> error;
};

BatchAnswer ParseAnswer(const std::string& body, std::size_t expected) {
  BatchAnswer answer;
  nlohmann::json j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    answer.error = "response is not a JSON object";
    return answer;
  }
  if (!j.contains("dim") || !j["dim"].is_number_unsigned() || !j.contains("vectors") ||
      !j["vectors"].is_array()) {
    answer.error = "response lacks \"dim\" or \"vectors\"";
    return answer;
  }
  answer.dim = j["dim"].get<std::size_t>();
  if (j["vectors"].size() != expected) {
    answer.error = "expected " + std::to_string(expected) + " vectors, got " +
                   std::to_string(j["vectors"].size());
    return answer;
  }
  for (const nlohmann::json& row : j["vectors"]) {
    if (!row.is_array()) {
      answer.error = "vector is not an array";
      return answer;
    }
    EmbeddingVector v;
    v.reserve(row.size());
    for (const nlohmann::json& x : row) {
      if (!x.is_number() || !std::isfinite(x.get<double>())) {
        answer.error = "vector entry is not a finite number";
        return answer;
      }
      v.push_back(x.get<double>());
    }
    answer.vectors.push_back(std::move(v));
  }
  return answer;
}

}  // namespace

std::vector<EmbeddingVector> HttpEmbedder::Embed(std::span<const std::string> texts) {
  const std::size_t n_batches = (texts.size() + options_.batch_size - 1) / options_.batch_size;
  std::vector<BatchAnswer> answers(n_batches);
  ParallelFor(n_batches, options_.max_in_flight, [&](std::size_t b) {
    const std::size_t lo = b * options_.batch_size;
    const std::size_t hi = std::min(texts.size(), lo + options_.batch_size);
    nlohmann::json request = {{"texts", nlohmann::json::array()}};
    for (std::size_t i = lo; i < hi; ++i) request["texts"].push_back(texts[i]);
    const HttpOutcome outcome = PostJson(endpoint_, "/embed", DumpJson(request), options_.call);
    if (outcome.kind != HttpOutcome::Kind::kOk) {
      answers[b].error = outcome.error;
      return;
    }
    answers[b] = ParseAnswer(outcome.body, hi - lo);
  });

  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (std::size_t b = 0; b < n_batches; ++b) {
    const std::size_t lo = b * options_.batch_size;
    const std::size_t hi = std::min(texts.size(), lo + options_.batch_size);
    BatchAnswer& answer = answers[b];
    if (answer.error) throw EmbeddingBatchError(lo, hi, *answer.error);
    if (dim_ == 0) dim_ = answer.dim;
    if (answer.dim != dim_) {
      throw ConfigError("embedder " + url_ + " changed dimension from " + std::to_string(dim_) +
                        " to " + std::to_string(answer.dim));
    }
    for (EmbeddingVector& v : answer.vectors) {
      if (v.size() != dim_) {
        throw ConfigError("embedder " + url_ + " returned a vector of length " +
                          std::to_string(v.size()) + " with dim " + std::to_string(dim_));
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::unique_ptr<EmbeddingProvider> MakeEmbedder(std::string_view spec,
                                                HttpEmbedderOptions http_options) {
  if (spec == "builtin") return std::make_unique<BuiltinHashedNgramEmbedder>();
  if (spec.substr(0, 5) == "http:") {
    return std::make_unique<HttpEmbedder>(spec.substr(5), http_options);
  }
  throw ConfigError("unknown embedder '" + std::string(spec) + "' (expected builtin or http:<url>)");
}

double Cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw MetricError("cosine of vectors with dimensions " + std::to_string(a.size()) + " and " +
                      std::to_string(b.size()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
}

std::string_view SimilarityReductionName(SimilarityReduction r) {
  return r == SimilarityReduction::kMax ? "max" : "mean";
}

SimilarityReduction ParseSimilarityReduction(std::string_view name) {
  if (name == "max") return SimilarityReduction::kMax;
  if (name == "mean") return SimilarityReduction::kMean;
  throw ConfigError("unknown similarity reduction '" + std::string(name) +
                    "' (expected max or mean)");
}

SimilarityResult SimilarityCorpus(std::span<const SimilarityInput> pairs,
                                  EmbeddingProvider& provider, SimilarityReduction reduction) {
  if (pairs.empty()) throw MetricError("similarity needs at least one pair");
  std::map<std::string, std::size_t> index;
  for (const SimilarityInput& p : pairs) {
    if (p.references.empty()) {
      throw MetricError("sample '" + p.sample_id + "' has no references");
    }
    index.emplace(p.candidate, 0);
    for (const std::string& r : p.references) index.emplace(r, 0);
  }
  std::vector<std::string> texts;
  texts.reserve(index.size());
  for (auto& [text, slot] : index) {
    slot = texts.size();
    texts.push_back(text);
  }
  const std::vector<EmbeddingVector> vectors = provider.Embed(texts);
  if (vectors.size() != texts.size()) {
    throw ProviderError("embedder returned " + std::to_string(vectors.size()) + " vectors for " +
                        std::to_string(texts.size()) + " texts");
  }

  SimilarityResult result;
  result.per_pair.reserve(pairs.size());
  for (const SimilarityInput& p : pairs) {
    const EmbeddingVector& cand = vectors[index.at(p.candidate)];
    double best = -1.0;
    double sum = 0.0;
    for (const std::string& r : p.references) {
      const double c = r == p.candidate ? 1.0 : Cosine(cand, vectors[index.at(r)]);
      best = std::max(best, c);
      sum += c;
    }
    result.per_pair.push_back(reduction == SimilarityReduction::kMax
                                  ? best
                                  : sum / static_cast<double>(p.references.size()));
  }
  result.score = OrderIndependentMean(result.per_pair);
  return result;
}

}  // namespace capharness
