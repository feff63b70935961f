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

#include "capharness/metrics/corpus.h"

#include "capharness/common/errors.h"
#include "capharness/common/parallel.h"
#include "capharness/metrics/bleu.h"

namespace capharness {

double CorpusScores::Ratio() const {
  if (reflen == 0) return 0.0;
  return static_cast<double>(testlen) / static_cast<double>(reflen);
}

CorpusEvaluation ScoreCorpus(std::span<const EvalPair> pairs, const ScoreOptions& options) {
  if (pairs.empty()) throw MetricError("cannot score an empty corpus");
  CorpusEvaluation out;
  const BleuResult bleu = Bleu(pairs);
  out.corpus.bleu = bleu.scores;
  out.corpus.testlen = bleu.testlen;
  out.corpus.reflen = bleu.reflen;

  CiderOptions cider_options;
  cider_options.sigma = options.cider_sigma;
  cider_options.workers = options.workers;
  cider_options.variant = CiderVariant::kD;
  const CiderResult cider_d = Cider(pairs, cider_options);
  cider_options.variant = CiderVariant::kPlain;
  const CiderResult cider_plain = Cider(pairs, cider_options);
  out.corpus.cider = cider_d.score;
  out.corpus.cider_plain = cider_plain.score;

  out.samples.resize(pairs.size());
  ParallelFor(pairs.size(), options.workers, [&](std::size_t i) {
    SampleScores& s = out.samples[i];
    s.sample_id = pairs[i].sample_id;
    const BleuResult sentence = SentenceBleu(pairs[i]);
    s.bleu = sentence.scores;
    s.testlen = sentence.testlen;
    s.reflen = sentence.reflen;
    s.meteor = SentenceMeteor(pairs[i], options.meteor);
    s.rouge_l = SentenceRougeL(pairs[i], options.rouge_beta);
    s.cider = cider_d.per_pair[i];
    s.cider_plain = cider_plain.per_pair[i];
  });

  std::vector<double> meteor, rouge;
  meteor.reserve(pairs.size());
  rouge.reserve(pairs.size());
  for (const SampleScores& s : out.samples) {
    meteor.push_back(s.meteor);
    rouge.push_back(s.rouge_l);
  }
  out.corpus.meteor = OrderIndependentMean(meteor);
  out.corpus.rouge_l = OrderIndependentMean(rouge);
  return out;
}

void to_json(nlohmann::json& j, const CorpusScores& s) {
  j = nlohmann::json{{"bleu1", s.bleu[0]},   {"bleu2", s.bleu[1]},
                     {"bleu3", s.bleu[2]},   {"bleu4", s.bleu[3]},
                     {"meteor", s.meteor},   {"rouge_l", s.rouge_l},
                     {"cider", s.cider},     {"cider_plain", s.cider_plain},
                     {"testlen", s.testlen}, {"reflen", s.reflen},
                     {"ratio", s.Ratio()}};
}

void from_json(const nlohmann::json& j, CorpusScores& s) {
  for (int k = 0; k < 4; ++k) j.at("bleu" + std::to_string(k + 1)).get_to(s.bleu[k]);
  j.at("meteor").get_to(s.meteor);
  j.at("rouge_l").get_to(s.rouge_l);
  j.at("cider").get_to(s.cider);
  s.cider_plain = j.value("cider_plain", 0.0);
  j.at("testlen").get_to(s.testlen);
  j.at("reflen").get_to(s.reflen);
}

void to_json(nlohmann::json& j, const SampleScores& s) {
  j = nlohmann::json{{"sample_id", s.sample_id}, {"bleu1", s.bleu[0]},
                     {"bleu2", s.bleu[1]},       {"bleu3", s.bleu[2]},
                     {"bleu4", s.bleu[3]},       {"meteor", s.meteor},
                     {"rouge_l", s.rouge_l},     {"cider", s.cider},
                     {"cider_plain", s.cider_plain}, {"testlen", s.testlen},
                     {"reflen", s.reflen}};
}

void from_json(const nlohmann::json& j, SampleScores& s) {
  j.at("sample_id").get_to(s.sample_id);
  for (int k = 0; k < 4; ++k) j.at("bleu" + std::to_string(k + 1)).get_to(s.bleu[k]);
  j.at("meteor").get_to(s.meteor);
  j.at("rouge_l").get_to(s.rouge_l);
  j.at("cider").get_to(s.cider);
  s.cider_plain = j.value("cider_plain", 0.0);
  s.testlen = j.value("testlen", uint64_t{0});
  s.reflen = j.value("reflen", uint64_t{0});
}

}  // namespace capharness
