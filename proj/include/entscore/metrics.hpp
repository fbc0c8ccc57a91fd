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

// Entity-level factual consistency metrics.
//
//   prec_s   = N(h ∩ s) / N(h)
//   prec_t   = N(h ∩ t) / N(h)    (hypothesis mentions found in the target)
//   recall_t = N(h ∩ t) / N(t)    (target mentions found in the hypothesis)
//   F1_t     = 2 prec_t recall_t / (prec_t + recall_t)
//
// Each in a U (distinct keys) and NU (every mention) variant. A ratio with a
// zero denominator is undefined and represented as std::nullopt.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "entscore/entities.hpp"
#include "entscore/matching.hpp"
#include "entscore/rouge.hpp"
#include "entscore/stopwords.hpp"
#include "entscore/textproc.hpp"

namespace entscore {

using Ratio = std::optional<double>;

inline Ratio safe_ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

inline Ratio precision_source(const EntityInventory& h,
                              const TokenizedText& source, CountMode mode,
                              const StopwordSet& stopwords,
                              const MatchPolicy& policy) {
  return safe_ratio(count_matched_in_text(h, source, mode, stopwords, policy),
                    inventory_count(h, mode));
}

// h -> t direction. `t_text` is only consulted under partial-text matching.
inline Ratio precision_target(const EntityInventory& h,
                              const EntityInventory& t,
                              const TokenizedText& t_text, CountMode mode,
                              const StopwordSet& stopwords,
                              const MatchPolicy& policy) {
  const std::size_t matched =
      intersection_count(h, MatchDirection::kVsKeys, {&t_text, &t.keys()},
                         mode, stopwords, policy);
  return safe_ratio(matched, inventory_count(h, mode));
}

// t -> h direction. `h_text` is only consulted under partial-text matching.
inline Ratio recall_target(const EntityInventory& h,
                           const TokenizedText& h_text,
                           const EntityInventory& t, CountMode mode,
                           const StopwordSet& stopwords,
                           const MatchPolicy& policy) {
  const std::size_t matched =
      intersection_count(t, MatchDirection::kVsKeys, {&h_text, &h.keys()},
                         mode, stopwords, policy);
  return safe_ratio(matched, inventory_count(t, mode));
}

inline double f1_target(double prec, double rec) {
  if (prec + rec <= 0) return 0.0;
  return 2 * prec * rec / (prec + rec);
}

inline Ratio f1_target(Ratio prec, Ratio rec) {
  if (!prec || !rec) return std::nullopt;
  return f1_target(*prec, *rec);
}

struct EntityCounts {
  std::size_t hypothesis = 0;            // N(h)
  std::size_t target = 0;                // N(t)
  std::size_t hypothesis_in_source = 0;  // N(h ∩ s)
  std::size_t hypothesis_in_target = 0;  // N(h ∩ t), h -> t
  std::size_t target_in_hypothesis = 0;  // N(h ∩ t), t -> h
};

struct EntityScores {
  Ratio prec_s;
  Ratio prec_t;
  Ratio recall_t;
  Ratio f1_t;
  EntityCounts counts;
};

struct RecordScores {
  EntityScores unique;
  EntityScores non_unique;
  Ratio rouge1_f;
  Ratio rouge2_f;
  Ratio rougeL_f;
  Ratio rougeLsum_f;

  const EntityScores& variant(CountMode mode) const {
    return mode == CountMode::kUnique ? unique : non_unique;
  }
};

// Everything one record contributes to scoring. Target fields may be
// absent, in which case target metrics and ROUGE are undefined.
struct ScoringInput {
  const TokenizedText* source = nullptr;
  const TokenizedText* hypothesis_text = nullptr;
  const EntityInventory* hypothesis = nullptr;
  const TokenizedText* target_text = nullptr;
  const EntityInventory* target = nullptr;
};

inline EntityScores score_entities(const ScoringInput& in, CountMode mode,
                                   const StopwordSet& stopwords,
                                   const MatchPolicy& policy) {
  EntityScores s;
  const EntityInventory& h = *in.hypothesis;
  s.counts.hypothesis = inventory_count(h, mode);
  s.counts.hypothesis_in_source =
      count_matched_in_text(h, *in.source, mode, stopwords, policy);
  s.prec_s = safe_ratio(s.counts.hypothesis_in_source, s.counts.hypothesis);
  if (in.target == nullptr || in.target_text == nullptr) return s;

  const EntityInventory& t = *in.target;
  s.counts.target = inventory_count(t, mode);
  s.counts.hypothesis_in_target =
      intersection_count(h, MatchDirection::kVsKeys, {in.target_text, &t.keys()},
                         mode, stopwords, policy);
  s.counts.target_in_hypothesis = intersection_count(
      t, MatchDirection::kVsKeys, {in.hypothesis_text, &h.keys()}, mode,
      stopwords, policy);
  s.prec_t = safe_ratio(s.counts.hypothesis_in_target, s.counts.hypothesis);
  s.recall_t = safe_ratio(s.counts.target_in_hypothesis, s.counts.target);
  s.f1_t = f1_target(s.prec_t, s.recall_t);
  return s;
}

inline RecordScores score_record(const ScoringInput& in,
                                 const StopwordSet& stopwords,
                                 const MatchPolicy& policy) {
  if (in.source == nullptr || in.hypothesis == nullptr ||
      in.hypothesis_text == nullptr)
    throw std::invalid_argument("score_record: source and hypothesis required");
  RecordScores r;
  r.unique = score_entities(in, CountMode::kUnique, stopwords, policy);
  r.non_unique = score_entities(in, CountMode::kNonUnique, stopwords, policy);
  if (in.target_text != nullptr) {
    const auto& h = in.hypothesis_text->tokens;
    const auto& t = in.target_text->tokens;
    r.rouge1_f = rouge_n(h, t, 1).f1;
    r.rouge2_f = rouge_n(h, t, 2).f1;
    r.rougeL_f = rouge_l(h, t).f1;
    r.rougeLsum_f = rouge_lsum(sentence_token_lists(*in.hypothesis_text),
                               sentence_token_lists(*in.target_text))
                        .f1;
  }
  return r;
}

// Report metric order. The first entries follow the classic summary table
// layout; the rest are the remaining entity metrics.
inline constexpr std::array<std::string_view, 12> kMetricNames = {
    "rouge1_f",   "rouge2_f",    "rougeL_f", "rougeLsum_f",
    "prec_s_u",   "prec_s_nu",   "f1_t_u",   "f1_t_nu",
    "prec_t_u",   "prec_t_nu",   "recall_t_u", "recall_t_nu"};

inline std::array<Ratio, kMetricNames.size()> metric_values(
    const RecordScores& r) {
  return {r.rouge1_f,         r.rouge2_f,          r.rougeL_f,
          r.rougeLsum_f,      r.unique.prec_s,     r.non_unique.prec_s,
          r.unique.f1_t,      r.non_unique.f1_t,   r.unique.prec_t,
          r.non_unique.prec_t, r.unique.recall_t,  r.non_unique.recall_t};
}

// One row of the per-record report; `scores` is empty when the record could
// not be scored, and `error` says why.
struct RecordEntry {
  std::string id;
  std::optional<RecordScores> scores;
  std::string error;
};

struct MetricAggregate {
  std::string_view name;
  Ratio mean;  // over records where the metric is defined
  std::size_t defined = 0;
  std::size_t undefined = 0;
};

struct MetricReport {
  std::vector<RecordEntry> per_record;
  std::vector<MetricAggregate> aggregate;
  std::size_t error_count = 0;
  MatchPolicy policy;

  const MetricAggregate& metric(std::string_view name) const {
    for (const auto& m : aggregate)
      if (m.name == name) return m;
    throw std::out_of_range("unknown metric: " + std::string(name));
  }
};

// Macro average of each metric over the records where it is defined.
// Values are summed in sorted order so the result does not depend on record
// order.
inline MetricReport aggregate(std::vector<RecordEntry> per_record,
                              const MatchPolicy& policy = {}) {
  if (per_record.empty())
    throw std::invalid_argument("aggregate: no records");
  MetricReport report;
  report.policy = policy;
  std::array<std::vector<double>, kMetricNames.size()> values;
  std::array<std::size_t, kMetricNames.size()> undefined{};
  for (const auto& entry : per_record) {
    if (!entry.scores) {
      ++report.error_count;
      for (auto& u : undefined) ++u;
      continue;
    }
    const auto row = metric_values(*entry.scores);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i]) {
        values[i].push_back(*row[i]);
      } else {
        ++undefined[i];
      }
    }
  }
  for (std::size_t i = 0; i < kMetricNames.size(); ++i) {
    auto& v = values[i];
    std::sort(v.begin(), v.end());
    MetricAggregate agg{kMetricNames[i], std::nullopt, v.size(), undefined[i]};
    if (!v.empty()) {
      double sum = 0.0;
      for (double x : v) sum += x;
      agg.mean = sum / static_cast<double>(v.size());
    }
    report.aggregate.push_back(agg);
  }
  report.per_record = std::move(per_record);
  return report;
}

inline MetricReport aggregate(std::span<const RecordScores> scores,
                              const MatchPolicy& policy = {}) {
  std::vector<RecordEntry> entries;
  entries.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i)
    entries.push_back({std::to_string(i), scores[i], {}});
  return aggregate(std::move(entries), policy);
}

}  // namespace entscore
