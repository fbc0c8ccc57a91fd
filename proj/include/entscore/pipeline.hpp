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

// In-memory command pipelines behind the CLI. Each command maps input corpus
// bytes to output bytes; file handling and argument parsing live in the
// tool. Records are processed by `jobs` workers and written back in input
// order, so the output does not depend on the worker count.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "entscore/corpus_io.hpp"
#include "entscore/dataset.hpp"
#include "entscore/entities.hpp"
#include "entscore/matching.hpp"
#include "entscore/metrics.hpp"
#include "entscore/report.hpp"
#include "entscore/stopwords.hpp"
#include "entscore/textproc.hpp"
#include "entscore/version.hpp"
#include "json.hpp"

namespace entscore {

enum class Command { kScore, kFilter, kAugment, kClean, kStats, kExtract };
enum class ModeSelection { kUnique, kNonUnique, kBoth };
enum class ExtractorKind { kHeuristic, kAnnotations };
enum class FilterStrategy { kSentence, kPair };
enum class ReportFormat { kStructured, kTable };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

inline std::string_view to_string(Command c) {
  switch (c) {
    case Command::kScore: return "score";
    case Command::kFilter: return "filter";
    case Command::kAugment: return "augment";
    case Command::kClean: return "clean";
    case Command::kStats: return "stats";
    case Command::kExtract: return "extract";
  }
  return "";
}

inline std::string_view to_string(ModeSelection m) {
  switch (m) {
    case ModeSelection::kUnique: return "u";
    case ModeSelection::kNonUnique: return "nu";
    case ModeSelection::kBoth: return "both";
  }
  return "";
}

inline std::string_view to_string(LengthAction a) {
  switch (a) {
    case LengthAction::kTruncate: return "truncate";
    case LengthAction::kDrop: return "drop";
    case LengthAction::kFlag: return "flag";
  }
  return "";
}

struct RunConfig {
  Command command = Command::kScore;
  std::string input_path;
  std::string output_path;
  std::string audit_path;
  std::string stopwords_path;  // empty: built-in list

  MatchPolicy policy;
  // Unset means the command default: both for score, nu for filter.
  std::optional<ModeSelection> mode;
  ExtractorKind extractor = ExtractorKind::kHeuristic;
  CleaningFlags cleaning;
  std::optional<LengthPolicy> length = LengthPolicy{};
  FilterStrategy strategy = FilterStrategy::kSentence;
  double threshold = 1.0;
  std::string separator = std::string(kDefaultSeparator);
  ReportFormat report = ReportFormat::kStructured;
  bool strict = false;
  int jobs = 1;

  ModeSelection effective_mode() const {
    if (mode) return *mode;
    return command == Command::kScore ? ModeSelection::kBoth
                                      : ModeSelection::kNonUnique;
  }

  // Throws std::invalid_argument on any inconsistency.
  void validate() const {
    if (jobs < 1) throw std::invalid_argument("--jobs must be >= 1");
    if (!(threshold >= 0.0 && threshold <= 1.0))
      throw std::invalid_argument("--threshold must be in [0, 1]");
    if (separator.empty()) throw std::invalid_argument("--separator must be non-empty");
    if (length) length->validate();
  }
};

// Settings that shape the output. Paths other than the input and the worker
// count are left out so that reruns elsewhere or with more workers produce
// identical bytes.
inline nlohmann::ordered_json config_echo(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = std::string(to_string(c.command));
  j["input"] = c.input_path;
  j["stopwords"] = c.stopwords_path.empty() ? "builtin-v" + std::to_string(kDefaultStopwordsVersion)
                                            : c.stopwords_path;
  j["extractor"] = c.extractor == ExtractorKind::kHeuristic ? "heuristic" : "annotations";
  j["policy"] = policy_json(c.policy);
  j["strict"] = c.strict;
  switch (c.command) {
    case Command::kScore:
      j["mode"] = std::string(to_string(c.effective_mode()));
      break;
    case Command::kFilter:
      j["strategy"] = c.strategy == FilterStrategy::kSentence ? "sentence" : "pair";
      if (c.strategy == FilterStrategy::kPair) {
        j["mode"] = std::string(to_string(c.effective_mode()));
        j["threshold"] = c.threshold;
      }
      break;
    case Command::kAugment:
      j["separator"] = c.separator;
      break;
    case Command::kClean:
      j["cleaning"] = {{"lowercase", c.cleaning.lowercase},
                       {"remove_citations", c.cleaning.remove_citations},
                       {"remove_numerals", c.cleaning.remove_numerals},
                       {"remove_punctuation", c.cleaning.remove_punctuation},
                       {"remove_symbols", c.cleaning.remove_symbols}};
      if (c.length) {
        j["length"] = {{"max_source_tokens", c.length->max_source_tokens},
                       {"max_target_tokens", c.length->max_target_tokens},
                       {"min_target_tokens", c.length->min_target_tokens},
                       {"action", std::string(to_string(c.length->action))}};
      } else {
        j["length"] = nullptr;
      }
      break;
    case Command::kStats:
    case Command::kExtract:
      break;
  }
  return j;
}

inline nlohmann::ordered_json run_meta(const RunConfig& c) {
  return {{"tool", "entscore"}, {"version", std::string(kVersion)}, {"config", config_echo(c)}};
}

struct CommandResult {
  int exit_code = kExitOk;
  std::string output;               // main artifact
  std::optional<std::string> audit;  // sidecar, when the command has one
  std::vector<std::string> diagnostics;
};

// Runs fn(i) for i in [0, n) on `jobs` threads. fn must only write to
// per-index state.
inline void parallel_for(std::size_t n, int jobs,
                         const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

namespace internal {

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string Diagnostic(const CorpusError& e) {
  std::string out = "line " + std::to_string(e.line_number);
  if (!e.id.empty()) out += " (id " + e.id + ")";
  return out + ": " + e.message;
}

inline std::string Diagnostic(const CorpusLine& line, const std::string& message) {
  return Diagnostic(CorpusError{line.line_number, line.record.id, message});
}

inline void RequireText(const CorpusLine& line, std::string_view field, bool non_empty) {
  if (!has_field(line, field))
    throw DataError("missing required field '" + std::string(field) + "'");
  if (non_empty) {
    const std::string& value =
        field == "source" ? line.record.source : line.record.target;
    if (internal::Trim(value).empty())
      throw DataError("field '" + std::string(field) + "' is empty");
  }
}

inline const std::vector<std::string>& RequireAnnotations(
    const std::optional<std::vector<std::string>>& list, std::string_view field) {
  if (!list)
    throw DataError("--extractor annotations needs field '" + std::string(field) + "'");
  return *list;
}

// Entities of one text field: heuristic extraction over `text`, or the
// record's annotation list.
inline EntityInventory FieldEntities(const RunConfig& config, const TokenizedText& text,
                                     const std::optional<std::vector<std::string>>& annotations,
                                     std::string_view annotation_field,
                                     const StopwordSet& stopwords) {
  if (config.extractor == ExtractorKind::kHeuristic)
    return extract_heuristic(text, stopwords);
  return ingest_annotations(RequireAnnotations(annotations, annotation_field));
}

// Per-record result slot filled by workers.
struct Slot {
  std::optional<std::string> error;
  std::optional<nlohmann::ordered_json> record;  // output record, if kept
  std::optional<nlohmann::ordered_json> audit;
  std::optional<RecordScores> scores;
  std::optional<EntityInventory> target_entities;
};

inline std::string JoinLines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

inline nlohmann::ordered_json FilterAuditJson(const FilterOutcome& o) {
  nlohmann::ordered_json j;
  j["id"] = o.record_id;
  j["record_kept"] = o.record_kept;
  j["reason"] = std::string(to_string(o.reason));
  j["kept_sentence_indices"] = o.kept_sentence_indices;
  nlohmann::ordered_json dropped = nlohmann::ordered_json::array();
  for (const auto& d : o.dropped_sentences)
    dropped.push_back({{"index", d.index}, {"unmatched_keys", d.unmatched_keys}});
  j["dropped_sentences"] = std::move(dropped);
  if (o.prec_s || o.undefined_prec_s) j["prec_s"] = ratio_json(o.prec_s);
  if (o.undefined_prec_s) j["warning"] = "no target entities; prec_s undefined";
  return j;
}

inline std::vector<std::string> Surfaces(const EntityInventory& inv) {
  std::vector<std::string> out;
  out.reserve(inv.mentions().size());
  for (const auto& m : inv.mentions()) out.push_back(m.surface);
  return out;
}

}  // namespace internal

// Runs one command over corpus bytes. Never throws for record-level
// problems: those become diagnostics, and under `strict` the exit code is
// kExitData and no artifact is produced.
inline CommandResult run_command(const RunConfig& config, std::string_view input,
                                 const StopwordSet& stopwords) {
  config.validate();
  CommandResult result;
  const nlohmann::ordered_json meta = run_meta(config);
  ParsedCorpus corpus = parse_corpus(input);
  for (const auto& e : corpus.errors) result.diagnostics.push_back(internal::Diagnostic(e));

  const std::size_t n = corpus.lines.size();
  std::vector<internal::Slot> slots(n);
  const ModeSelection mode_sel = config.effective_mode();

  auto process = [&](std::size_t i) {
    const CorpusLine& line = corpus.lines[i];
    const CorpusRecord& rec = line.record;
    internal::Slot& slot = slots[i];
    try {
      switch (config.command) {
        case Command::kScore: {
          internal::RequireText(line, "source", false);
          if (!has_field(line, "hypothesis"))
            throw internal::DataError("missing required field 'hypothesis'");
          const TokenizedText source = tokenize(rec.source);
          const TokenizedText hyp_text = tokenize(*rec.hypothesis);
          const EntityInventory hyp = internal::FieldEntities(
              config, hyp_text, rec.entities_hypothesis, "entities_hypothesis", stopwords);
          ScoringInput in{&source, &hyp_text, &hyp, nullptr, nullptr};
          std::optional<TokenizedText> target_text;
          std::optional<EntityInventory> target;
          if (has_field(line, "target")) {
            target_text = tokenize(rec.target);
            target = internal::FieldEntities(config, *target_text, rec.entities_target,
                                             "entities_target", stopwords);
            in.target_text = &*target_text;
            in.target = &*target;
          }
          slot.scores = score_record(in, stopwords, config.policy);
          break;
        }
        case Command::kFilter: {
          internal::RequireText(line, "source", true);
          internal::RequireText(line, "target", true);
          const TokenizedText source = tokenize(rec.source);
          FilterOutcome outcome;
          CorpusLine out_line = line;
          if (config.strategy == FilterStrategy::kSentence) {
            std::pair<CorpusRecord, FilterOutcome> filtered;
            if (config.extractor == ExtractorKind::kHeuristic) {
              filtered = filter_sentences(rec, source, HeuristicExtractor(stopwords),
                                          stopwords, config.policy);
            } else {
              AnnotationExtractor extractor(
                  internal::RequireAnnotations(rec.entities_target, "entities_target"));
              filtered = filter_sentences(rec, source, extractor, stopwords, config.policy);
            }
            out_line.record = std::move(filtered.first);
            outcome = std::move(filtered.second);
          } else {
            const EntityInventory target = internal::FieldEntities(
                config, tokenize(rec.target), rec.entities_target, "entities_target",
                stopwords);
            auto decide = [&](CountMode m) {
              return filter_pairs(rec, target, source, config.threshold, m, stopwords,
                                  config.policy);
            };
            if (mode_sel == ModeSelection::kBoth) {
              FilterOutcome u = decide(CountMode::kUnique);
              outcome = decide(CountMode::kNonUnique);
              if (!u.record_kept) outcome = u;
            } else {
              outcome = decide(mode_sel == ModeSelection::kUnique ? CountMode::kUnique
                                                                   : CountMode::kNonUnique);
            }
            outcome.kept_sentence_indices.clear();
          }
          slot.audit = internal::FilterAuditJson(outcome);
          if (outcome.record_kept) slot.record = to_json(out_line);
          break;
        }
        case Command::kAugment: {
          internal::RequireText(line, "target", true);
          const EntityInventory target = internal::FieldEntities(
              config, tokenize(rec.target), rec.entities_target, "entities_target",
              stopwords);
          JaensTarget jt;
          try {
            jt = jaens_augment(target, rec.target, config.separator);
          } catch (const SeparatorCollision& e) {
            throw internal::DataError(std::string("separator collision: ") + e.what());
          }
          CorpusLine out_line = line;
          out_line.record.target = jt.serialize();
          nlohmann::ordered_json obj = to_json(out_line);
          obj["target_original"] = rec.target;
          obj["entity_chain"] = jt.entity_chain;
          slot.record = std::move(obj);
          break;
        }
        case Command::kClean: {
          internal::RequireText(line, "source", false);
          internal::RequireText(line, "target", false);
          CorpusLine out_line = line;
          CorpusRecord& r = out_line.record;
          r.source = clean_text(r.source, config.cleaning);
          r.target = clean_text(r.target, config.cleaning);
          if (r.hypothesis) r.hypothesis = clean_text(*r.hypothesis, config.cleaning);
          nlohmann::ordered_json audit{{"id", r.id}};
          if (config.length) {
            LengthOutcome lo = enforce_length(std::move(r), *config.length);
            audit["record_kept"] = lo.record.has_value();
            audit["length_flags"] = lo.flags;
            if (lo.record) {
              out_line.record = std::move(*lo.record);
              slot.record = to_json(out_line);
            }
          } else {
            audit["record_kept"] = true;
            audit["length_flags"] = nlohmann::ordered_json::array();
            slot.record = to_json(out_line);
          }
          slot.audit = std::move(audit);
          break;
        }
        case Command::kStats: {
          internal::RequireText(line, "source", false);
          internal::RequireText(line, "target", false);
          slot.target_entities = internal::FieldEntities(
              config, tokenize(rec.target), rec.entities_target, "entities_target",
              stopwords);
          break;
        }
        case Command::kExtract: {
          CorpusLine out_line = line;
          CorpusRecord& r = out_line.record;
          nlohmann::ordered_json counts = nlohmann::ordered_json::object();
          auto emit = [&](std::string_view name, const std::string& text,
                          std::optional<std::vector<std::string>>& field) {
            const EntityInventory inv = internal::FieldEntities(
                config, tokenize(text), field, "entities_" + std::string(name), stopwords);
            field = internal::Surfaces(inv);
            counts[std::string(name)] = {{"u", inventory_count(inv, CountMode::kUnique)},
                                         {"nu", inventory_count(inv, CountMode::kNonUnique)}};
          };
          if (has_field(line, "source") || r.entities_source) emit("source", r.source, r.entities_source);
          if (has_field(line, "target") || r.entities_target) emit("target", r.target, r.entities_target);
          if (r.hypothesis || r.entities_hypothesis)
            emit("hypothesis", r.hypothesis.value_or(""), r.entities_hypothesis);
          nlohmann::ordered_json obj = to_json(out_line);
          obj["entity_counts"] = std::move(counts);
          slot.record = std::move(obj);
          break;
        }
      }
    } catch (const internal::DataError& e) {
      slot.error = e.what();
    } catch (const std::invalid_argument& e) {
      slot.error = e.what();
    }
  };
  parallel_for(n, config.jobs, process);

  bool data_errors = !corpus.errors.empty();
  for (std::size_t i = 0; i < n; ++i) {
    if (slots[i].error) {
      data_errors = true;
      result.diagnostics.push_back(internal::Diagnostic(corpus.lines[i], *slots[i].error));
    }
  }
  // An entity-chain collision aborts augmentation regardless of strictness.
  const bool abort = (config.strict || config.command == Command::kAugment) && data_errors;
  if (abort) {
    result.exit_code = kExitData;
    return result;
  }

  switch (config.command) {
    case Command::kScore: {
      std::vector<RecordEntry> entries;
      entries.reserve(n);
      for (std::size_t i = 0; i < n; ++i)
        entries.push_back({corpus.lines[i].record.id, slots[i].scores,
                           slots[i].error.value_or("")});
      if (entries.empty()) {
        result.diagnostics.push_back("no scorable records in input");
        result.exit_code = kExitData;
        return result;
      }
      const MetricReport report = aggregate(std::move(entries), config.policy);
      const VariantSelection variants{mode_sel != ModeSelection::kNonUnique,
                                      mode_sel != ModeSelection::kUnique};
      if (config.report == ReportFormat::kTable) {
        result.output = report_table(report, variants);
      } else {
        result.output = report_json(report, variants, meta).dump(2) + "\n";
      }
      break;
    }
    case Command::kStats: {
      std::vector<CorpusRecord> records;
      std::vector<EntityInventory> inventories;
      for (std::size_t i = 0; i < n; ++i) {
        if (!slots[i].target_entities) continue;
        records.push_back(corpus.lines[i].record);
        inventories.push_back(std::move(*slots[i].target_entities));
      }
      if (records.empty()) {
        result.diagnostics.push_back("no usable records in input");
        result.exit_code = kExitData;
        return result;
      }
      result.output = stats_json(corpus_stats(records, inventories), meta).dump(2) + "\n";
      break;
    }
    default: {
      std::vector<std::string> out_lines{meta_line(meta)};
      std::vector<std::string> audit_lines{meta_line(meta)};
      for (std::size_t i = 0; i < n; ++i) {
        const internal::Slot& slot = slots[i];
        if (slot.error) {
          audit_lines.push_back(nlohmann::ordered_json{{"id", corpus.lines[i].record.id},
                                                       {"record_kept", false},
                                                       {"reason", "invalid-record"},
                                                       {"error", *slot.error}}
                                    .dump());
          continue;
        }
        if (slot.record) out_lines.push_back(slot.record->dump());
        if (slot.audit) audit_lines.push_back(slot.audit->dump());
      }
      for (const auto& e : corpus.errors) {
        audit_lines.push_back(nlohmann::ordered_json{{"line", e.line_number},
                                                     {"id", e.id},
                                                     {"record_kept", false},
                                                     {"reason", "invalid-record"},
                                                     {"error", e.message}}
                                  .dump());
      }
      result.output = internal::JoinLines(out_lines);
      if (config.command == Command::kFilter || config.command == Command::kClean)
        result.audit = internal::JoinLines(audit_lines);
      break;
    }
  }
  return result;
}

}  // namespace entscore
