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

#include "capharness/metrics/meteor.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>

#include "capharness/common/errors.h"
#include "capharness/common/file_util.h"
#include "capharness/metrics/porter_stemmer.h"

namespace capharness {

SynonymTable SynonymTable::Parse(std::string_view text) {
  SynonymTable table;
  int line_no = 0;
  for (const std::string& raw : SplitLines(text)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::string spaced(line);
    std::replace(spaced.begin(), spaced.end(), ',', ' ');
    std::vector<std::string> members;
    std::size_t pos = 0;
    while (pos < spaced.size()) {
      while (pos < spaced.size() && std::isspace(static_cast<unsigned char>(spaced[pos]))) ++pos;
      std::size_t end = pos;
      while (end < spaced.size() && !std::isspace(static_cast<unsigned char>(spaced[end]))) ++end;
      if (end > pos) {
        TokenSeq tokens = Tokenize(std::string_view(spaced).substr(pos, end - pos));
        if (tokens.size() != 1) {
          throw ParseError("line " + std::to_string(line_no),
                           "synonym '" + spaced.substr(pos, end - pos) +
                               "' is not a single token");
        }
        members.push_back(tokens[0]);
      }
      pos = end;
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty()) continue;
    if (members.size() == 1) {
      throw ParseError("line " + std::to_string(line_no), "synonym set has a single member");
    }
    const int id = static_cast<int>(table.set_count_++);
    for (std::string& m : members) table.sets_[std::move(m)].push_back(id);
  }
  return table;
}

SynonymTable SynonymTable::Load(const std::filesystem::path& path) {
  return Parse(ReadFileToString(path));
}

bool SynonymTable::AreSynonyms(std::string_view a, std::string_view b) const {
  if (a == b) return false;
  auto ia = sets_.find(a);
  auto ib = sets_.find(b);
  if (ia == sets_.end() || ib == sets_.end()) return false;
  const std::vector<int>& x = ia->second;
  const std::vector<int>& y = ib->second;
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i] == y[j]) return true;
    if (x[i] < y[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

int CountChunks(std::span<const int> c2r) {
  int chunks = 0;
  int prev = -2;
  for (int j : c2r) {
    if (j < 0) {
      prev = -2;
      continue;
    }
    if (prev < 0 || j != prev + 1) ++chunks;
    prev = j;
  }
  return chunks;
}

int CountCrossings(std::span<const int> c2r) {
  int crossings = 0;
  for (std::size_t a = 0; a < c2r.size(); ++a) {
    if (c2r[a] < 0) continue;
    for (std::size_t b = a + 1; b < c2r.size(); ++b) {
      if (c2r[b] >= 0 && c2r[a] > c2r[b]) ++crossings;
    }
  }
  return crossings;
}

namespace {

// Exhaustive branch-and-bound over one stage.
class StageSearch {
 public:
  StageSearch(std::vector<int>& c2r, std::vector<bool>& ref_used,
              std::vector<std::vector<int>> edges, std::size_t budget)
      : c2r_(c2r), ref_used_(ref_used), edges_(std::move(edges)), budget_(budget) {
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (!edges_[i].empty()) open_.push_back(static_cast<int>(i));
    }
    crossings_ = CountCrossings(c2r_);
  }

  // Returns true when the budget ran out.
  bool Run() {
    if (open_.empty()) return false;
    best_ = c2r_;
    Dfs(0, 0);
    c2r_ = best_;
    for (int i : open_) {
      if (c2r_[i] >= 0) ref_used_[c2r_[i]] = true;
    }
    return exhausted_;
  }

 private:
  int CrossingsWith(int i, int j) const {
    int n = 0;
    for (std::size_t k = 0; k < c2r_.size(); ++k) {
      const int r = c2r_[k];
      if (r < 0) continue;
      if ((static_cast<int>(k) < i && r > j) || (static_cast<int>(k) > i && r < j)) ++n;
    }
    return n;
  }

  int UpperBound(std::size_t depth) const {
    int cands = 0;
    std::vector<bool> seen(ref_used_.size(), false);
    int refs = 0;
    for (std::size_t d = depth; d < open_.size(); ++d) {
      bool any = false;
      for (int j : edges_[open_[d]]) {
        if (ref_used_[j]) continue;
        any = true;
        if (!seen[j]) {
          seen[j] = true;
          ++refs;
        }
      }
      if (any) ++cands;
    }
    return std::min(cands, refs);
  }

  void Leaf(int matches) {
    if (!have_best_) {
      Accept(matches);
      return;
    }
    if (matches != best_matches_) {
      if (matches > best_matches_) Accept(matches);
      return;
    }
    if (crossings_ != best_crossings_) {
      if (crossings_ < best_crossings_) Accept(matches);
      return;
    }
    if (CountChunks(c2r_) < best_chunks_) Accept(matches);
  }

  void Accept(int matches) {
    have_best_ = true;
    best_ = c2r_;
    best_matches_ = matches;
    best_crossings_ = crossings_;
    best_chunks_ = CountChunks(c2r_);
  }

  void Dfs(std::size_t depth, int matches) {
    if (exhausted_) return;
    if (++nodes_ > budget_ && have_best_) {
      exhausted_ = true;
      return;
    }
    if (depth == open_.size()) {
      Leaf(matches);
      return;
    }
    if (have_best_) {
      const int ub = matches + UpperBound(depth);
      if (ub < best_matches_) return;
      if (ub == best_matches_ && crossings_ > best_crossings_) return;
    }
    const int i = open_[depth];
    for (int j : edges_[i]) {
      if (ref_used_[j]) continue;
      const int added = CrossingsWith(i, j);
      ref_used_[j] = true;
      c2r_[i] = j;
      crossings_ += added;
      Dfs(depth + 1, matches + 1);
      crossings_ -= added;
      c2r_[i] = -1;
      ref_used_[j] = false;
      if (exhausted_) return;
    }
    Dfs(depth + 1, matches);
  }

  std::vector<int>& c2r_;
  std::vector<bool>& ref_used_;
  std::vector<std::vector<int>> edges_;
  std::vector<int> open_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
  int crossings_ = 0;

  bool have_best_ = false;
  std::vector<int> best_;
  int best_matches_ = 0;
  int best_crossings_ = 0;
  int best_chunks_ = 0;
};

}  // namespace

MeteorAlignment Align(const TokenSeq& candidate, const TokenSeq& reference,
                      const MeteorOptions& options) {
  const std::size_t n = candidate.size();
  const std::size_t r = reference.size();
  MeteorAlignment out;
  out.candidate_to_reference.assign(n, -1);
  std::vector<bool> ref_used(r, false);

  std::vector<std::function<bool(std::size_t, std::size_t)>> stages;
  stages.emplace_back([&](std::size_t i, std::size_t j) { return candidate[i] == reference[j]; });
  std::vector<std::string> cand_stems, ref_stems;
  if (options.stem) {
    for (const std::string& t : candidate) cand_stems.push_back(PorterStem(t));
    for (const std::string& t : reference) ref_stems.push_back(PorterStem(t));
    stages.emplace_back(
        [&](std::size_t i, std::size_t j) { return cand_stems[i] == ref_stems[j]; });
  }
  if (options.synonyms != nullptr) {
    stages.emplace_back([&](std::size_t i, std::size_t j) {
      return options.synonyms->AreSynonyms(candidate[i], reference[j]);
    });
  }

  for (const auto& match : stages) {
    std::vector<std::vector<int>> edges(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (out.candidate_to_reference[i] >= 0) continue;
      for (std::size_t j = 0; j < r; ++j) {
        if (!ref_used[j] && match(i, j)) edges[i].push_back(static_cast<int>(j));
      }
    }
    StageSearch search(out.candidate_to_reference, ref_used, std::move(edges),
                       options.search_budget);
    if (search.Run()) out.budget_exhausted = true;
  }
  for (int j : out.candidate_to_reference) {
    if (j >= 0) ++out.matches;
  }
  out.chunks = CountChunks(out.candidate_to_reference);
  return out;
}

double MeteorScore(const TokenSeq& candidate, const TokenSeq& reference,
                   const MeteorOptions& options) {
  if (candidate.empty() || reference.empty()) return 0.0;
  const MeteorAlignment a = Align(candidate, reference, options);
  if (a.matches == 0) return 0.0;
  const double m = a.matches;
  const double p = m / static_cast<double>(candidate.size());
  const double rec = m / static_cast<double>(reference.size());
  const double fmean = 10.0 * p * rec / (rec + 9.0 * p);
  const double frag = static_cast<double>(a.chunks) / m;
  const double penalty = 0.5 * frag * frag * frag;
  return fmean * (1.0 - penalty);
}

double SentenceMeteor(const EvalPair& pair, const MeteorOptions& options) {
  double best = 0.0;
  for (const TokenSeq& ref : pair.references) {
    best = std::max(best, MeteorScore(pair.candidate, ref, options));
  }
  return best;
}

double Meteor(std::span<const EvalPair> pairs, const MeteorOptions& options) {
  if (pairs.empty()) throw MetricError("METEOR needs at least one pair");
  std::vector<double> scores;
  scores.reserve(pairs.size());
  for (const EvalPair& p : pairs) scores.push_back(SentenceMeteor(p, options));
  return OrderIndependentMean(scores);
}

}  // namespace capharness
