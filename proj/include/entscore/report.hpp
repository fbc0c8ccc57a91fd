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

#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "entscore/dataset.hpp"
#include "entscore/metrics.hpp"
#include "json.hpp"

namespace entscore {

// Fixed two-decimal percentage, e.g. 0.93376 -> "93.38".
inline std::string format_percent(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", ratio * 100.0);
  return buf;
}

inline nlohmann::ordered_json ratio_json(const Ratio& r) {
  return r ? nlohmann::ordered_json(*r) : nlohmann::ordered_json(nullptr);
}

inline nlohmann::ordered_json policy_json(const MatchPolicy& p) {
  return {{"unigram_stopword_block", p.unigram_stopword_block},
          {"target_match_mode", std::string(to_string(p.target_match_mode))},
          {"numeric_unigram_block", p.numeric_unigram_block}};
}

// Which count variants a report shows.
struct VariantSelection {
  bool unique = true;
  bool non_unique = true;

  bool shows(std::string_view metric) const {
    if (metric.ends_with("_nu")) return non_unique;
    if (metric.ends_with("_u")) return unique;
    return true;
  }
};

inline nlohmann::ordered_json entity_scores_json(const EntityScores& s) {
  return {{"prec_s", ratio_json(s.prec_s)},
          {"prec_t", ratio_json(s.prec_t)},
          {"recall_t", ratio_json(s.recall_t)},
          {"f1_t", ratio_json(s.f1_t)},
          {"counts",
           {{"n_h", s.counts.hypothesis},
            {"n_t", s.counts.target},
            {"n_h_in_s", s.counts.hypothesis_in_source},
            {"n_h_in_t", s.counts.hypothesis_in_target},
            {"n_t_in_h", s.counts.target_in_hypothesis}}}};
}

inline nlohmann::ordered_json report_json(const MetricReport& report,
                                          const VariantSelection& variants,
                                          const nlohmann::ordered_json& meta) {
  nlohmann::ordered_json out;
  out["_meta"] = meta;
  out["policy"] = policy_json(report.policy);

  nlohmann::ordered_json agg = nlohmann::ordered_json::object();
  nlohmann::ordered_json undefined = nlohmann::ordered_json::object();
  for (const auto& m : report.aggregate) {
    if (!variants.shows(m.name)) continue;
    const std::string name(m.name);
    agg[name] = {{"percent", m.mean ? nlohmann::ordered_json(format_percent(*m.mean))
                                    : nlohmann::ordered_json(nullptr)},
                 {"mean", ratio_json(m.mean)},
                 {"defined", m.defined}};
    undefined[name] = m.undefined;
  }
  out["aggregate"] = agg;
  out["undefined_counts"] = undefined;
  out["not_computed"] = {"meteor", "bertscore"};
  out["records_total"] = report.per_record.size();
  out["records_with_errors"] = report.error_count;

  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& entry : report.per_record) {
    nlohmann::ordered_json rec;
    rec["id"] = entry.id;
    if (!entry.scores) {
      rec["error"] = entry.error;
      records.push_back(std::move(rec));
      continue;
    }
    const RecordScores& s = *entry.scores;
    rec["rouge1_f"] = ratio_json(s.rouge1_f);
    rec["rouge2_f"] = ratio_json(s.rouge2_f);
    rec["rougeL_f"] = ratio_json(s.rougeL_f);
    rec["rougeLsum_f"] = ratio_json(s.rougeLsum_f);
    if (variants.unique) rec["u"] = entity_scores_json(s.unique);
    if (variants.non_unique) rec["nu"] = entity_scores_json(s.non_unique);
    records.push_back(std::move(rec));
  }
  out["records"] = std::move(records);
  return out;
}

// Aligned plain-text table in the usual column order:
// R-1 R-2 R-L R-LSum METEOR BERTScore prec_s^U prec_s^NU F1_t^U F1_t^NU,
// followed by the remaining target metrics.
inline std::string report_table(const MetricReport& report,
                                const VariantSelection& variants,
                                std::string_view row_label = "corpus") {
  struct Column {
    std::string header;
    std::string value;
  };
  auto cell = [&](std::string_view metric) {
    const auto& m = report.metric(metric);
    return m.mean ? format_percent(*m.mean) : std::string("undef");
  };
  std::vector<Column> cols;
  cols.push_back({"Model", std::string(row_label)});
  cols.push_back({"R-1", cell("rouge1_f")});
  cols.push_back({"R-2", cell("rouge2_f")});
  cols.push_back({"R-L", cell("rougeL_f")});
  cols.push_back({"R-LSum", cell("rougeLsum_f")});
  cols.push_back({"METEOR*", "n/c"});
  cols.push_back({"BERTScore*", "n/c"});
  const std::array<std::pair<std::string_view, std::string_view>, 8> entity_cols = {{
      {"prec_s_u", "prec_s^U"},
      {"prec_s_nu", "prec_s^NU"},
      {"f1_t_u", "F1_t^U"},
      {"f1_t_nu", "F1_t^NU"},
      {"prec_t_u", "prec_t^U"},
      {"prec_t_nu", "prec_t^NU"},
      {"recall_t_u", "recall_t^U"},
      {"recall_t_nu", "recall_t^NU"},
  }};
  for (const auto& [metric, header] : entity_cols)
    if (variants.shows(metric)) cols.push_back({std::string(header), cell(metric)});

  std::string header_line, value_line;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const std::size_t width = std::max(cols[i].header.size(), cols[i].value.size());
    auto pad = [&](const std::string& s) {
      std::string out = s;
      out.resize(width, ' ');
      return out;
    };
    if (i) {
      header_line += " | ";
      value_line += " | ";
    }
    header_line += pad(cols[i].header);
    value_line += pad(cols[i].value);
  }
  auto rstrip = [](std::string s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
  };
  std::string out = rstrip(header_line) + "\n" +
                    std::string(header_line.size(), '-') + "\n" +
                    rstrip(value_line) + "\n";
  out += "* not computed. All scores in percent; " +
         std::to_string(report.per_record.size()) + " records, " +
         std::to_string(report.error_count) + " with errors.\n";
  return out;
}

inline nlohmann::ordered_json distribution_json(const Distribution& d) {
  return {{"mean", d.mean}, {"median", d.median}, {"min", d.min}, {"max", d.max}};
}

inline nlohmann::ordered_json stats_json(const CorpusStats& s,
                                         const nlohmann::ordered_json& meta) {
  return {{"_meta", meta},
          {"records", s.records},
          {"target_sentences", distribution_json(s.target_sentences)},
          {"source_tokens", distribution_json(s.source_tokens)},
          {"target_tokens", distribution_json(s.target_tokens)},
          {"target_entities", distribution_json(s.target_entities)}};
}

}  // namespace entscore
