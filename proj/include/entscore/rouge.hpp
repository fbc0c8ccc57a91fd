// Copyright 2026 The entscore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Single-reference ROUGE without stemming or stop-word removal. Inputs are
// already-normalized token streams.

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "entscore/textproc.hpp"

namespace entscore {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

namespace internal {

inline RougeScore MakeRougeScore(double overlap, std::size_t hyp_total,
                                 std::size_t ref_total) {
  RougeScore s;
  if (hyp_total == 0 || ref_total == 0) return s;
  s.precision = overlap / static_cast<double>(hyp_total);
  s.recall = overlap / static_cast<double>(ref_total);
  if (s.precision + s.recall > 0)
    s.f1 = 2 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

inline std::map<std::vector<std::string>, std::size_t> CountNgrams(
    std::span<const std::string> tokens, std::size_t n) {
  std::map<std::vector<std::string>, std::size_t> counts;
  for (const auto& gram : ngrams(tokens, n))
    ++counts[std::vector<std::string>(gram.begin(), gram.end())];
  return counts;
}

using LcsTable = std::vector<std::vector<std::size_t>>;

inline LcsTable BuildLcsTable(std::span<const std::string> ref,
                              std::span<const std::string> hyp) {
  LcsTable t(ref.size() + 1, std::vector<std::size_t>(hyp.size() + 1, 0));
  for (std::size_t i = 1; i <= ref.size(); ++i) {
    for (std::size_t j = 1; j <= hyp.size(); ++j) {
      t[i][j] = ref[i - 1] == hyp[j - 1] ? t[i - 1][j - 1] + 1
                                         : std::max(t[i - 1][j], t[i][j - 1]);
    }
  }
  return t;
}

// Reference positions of one LCS, recovered by backtracking.
inline std::vector<std::size_t> LcsReferenceIndices(
    std::span<const std::string> ref, std::span<const std::string> hyp) {
  const LcsTable t = BuildLcsTable(ref, hyp);
  std::vector<std::size_t> indices;
  std::size_t i = ref.size();
  std::size_t j = hyp.size();
  while (i > 0 && j > 0) {
    if (ref[i - 1] == hyp[j - 1]) {
      indices.push_back(i - 1);
      --i;
      --j;
    } else if (t[i][j - 1] > t[i - 1][j]) {
      --j;
    } else {
      --i;
    }
  }
  std::reverse(indices.begin(), indices.end());
  return indices;
}

}  // namespace internal

// Clipped n-gram overlap.
inline RougeScore rouge_n(std::span<const std::string> hyp,
                          std::span<const std::string> ref, std::size_t n) {
  if (n == 0) throw std::invalid_argument("rouge_n: n must be >= 1");
  const auto hyp_counts = internal::CountNgrams(hyp, n);
  const auto ref_counts = internal::CountNgrams(ref, n);
  std::size_t overlap = 0;
  for (const auto& [gram, count] : hyp_counts) {
    if (auto it = ref_counts.find(gram); it != ref_counts.end())
      overlap += std::min(count, it->second);
  }
  const std::size_t hyp_total = hyp.size() >= n ? hyp.size() - n + 1 : 0;
  const std::size_t ref_total = ref.size() >= n ? ref.size() - n + 1 : 0;
  return internal::MakeRougeScore(static_cast<double>(overlap), hyp_total,
                                  ref_total);
}

inline std::size_t lcs_length(std::span<const std::string> a,
                              std::span<const std::string> b) {
  return internal::BuildLcsTable(a, b)[a.size()][b.size()];
}

inline RougeScore rouge_l(std::span<const std::string> hyp,
                          std::span<const std::string> ref) {
  return internal::MakeRougeScore(static_cast<double>(lcs_length(ref, hyp)),
                                  hyp.size(), ref.size());
}

// Summary-level LCS: for every reference sentence, the union of its LCS
// positions against each hypothesis sentence counts as hits, clipped by the
// remaining token budget on both sides.
inline RougeScore rouge_lsum(
    const std::vector<std::vector<std::string>>& hyp_sentences,
    const std::vector<std::vector<std::string>>& ref_sentences) {
  std::size_t hyp_total = 0;
  std::size_t ref_total = 0;
  std::map<std::string, std::size_t> hyp_budget;
  std::map<std::string, std::size_t> ref_budget;
  for (const auto& s : hyp_sentences) {
    hyp_total += s.size();
    for (const auto& t : s) ++hyp_budget[t];
  }
  for (const auto& s : ref_sentences) {
    ref_total += s.size();
    for (const auto& t : s) ++ref_budget[t];
  }
  if (hyp_total == 0 || ref_total == 0) return {};

  std::size_t hits = 0;
  for (const auto& ref : ref_sentences) {
    std::set<std::size_t> union_indices;
    for (const auto& hyp : hyp_sentences) {
      for (std::size_t idx : internal::LcsReferenceIndices(ref, hyp))
        union_indices.insert(idx);
    }
    for (std::size_t idx : union_indices) {
      const std::string& token = ref[idx];
      auto& h = hyp_budget[token];
      auto& r = ref_budget[token];
      if (h > 0 && r > 0) {
        ++hits;
        --h;
        --r;
      }
    }
  }
  return internal::MakeRougeScore(static_cast<double>(hits), hyp_total,
                                  ref_total);
}

// Per-sentence token lists of a tokenized document.
inline std::vector<std::vector<std::string>> sentence_token_lists(
    const TokenizedText& doc) {
  std::vector<std::vector<std::string>> out;
  out.reserve(doc.sentence_bounds.size());
  for (std::size_t s = 0; s < doc.sentence_bounds.size(); ++s) {
    const auto span = doc.sentence_tokens(s);
    out.emplace_back(span.begin(), span.end());
  }
  return out;
}

}  // namespace entscore
