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

// Corpus transforms used to prepare summarization training data: cleaning,
// length budgets, entity-based filtering, and entity-chain target
// augmentation.

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <regex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entscore/entities.hpp"
#include "entscore/matching.hpp"
#include "entscore/metrics.hpp"
#include "entscore/stopwords.hpp"
#include "entscore/textproc.hpp"

namespace entscore {

struct CorpusRecord {
  std::string id;
  std::string source;
  std::string target;
  std::optional<std::string> hypothesis;
  std::optional<std::vector<std::string>> entities_source;
  std::optional<std::vector<std::string>> entities_target;
  std::optional<std::vector<std::string>> entities_hypothesis;
};

// ---------------------------------------------------------------------------
// Cleaning

struct CleaningFlags {
  bool lowercase = true;
  bool remove_citations = true;
  bool remove_numerals = true;
  bool remove_punctuation = true;
  bool remove_symbols = true;
};

namespace internal {

inline bool HasAsciiDigit(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

inline bool HasLetter(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return u >= 0x80 || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  });
}

inline bool HasWordByte(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    return IsWordByte(static_cast<unsigned char>(c));
  });
}

// Digits plus punctuation, no letters: "12", "0.05", "3,000", "45%".
inline bool IsNumeralToken(std::string_view s) {
  return HasAsciiDigit(s) && !HasLetter(s);
}

inline const std::regex& CitationPattern() {
  // [12], [3, 4], [5-7], (3), (1,2)
  static const std::regex kPattern(
      R"((\[\s*\d+(\s*[,;\-]\s*\d+)*\s*\])|(\(\s*\d+(\s*[,;\-]\s*\d+)*\s*\)))");
  return kPattern;
}

}  // namespace internal

// Removes the enabled classes of noise and collapses whitespace. Idempotent
// for every flag combination.
inline std::string clean_text(std::string_view raw,
                              const CleaningFlags& flags = {}) {
  std::string text(raw);
  if (flags.lowercase) text = internal::AsciiLower(text);
  if (flags.remove_citations) {
    // Removing "[2]" from "[1[2]]" exposes "[1 ]", so repeat to a fixpoint.
    for (;;) {
      std::string next =
          std::regex_replace(text, internal::CitationPattern(), " ");
      if (next == text) break;
      text = std::move(next);
    }
  }

  std::vector<std::string> kept;
  auto keep_piece = [&](std::string_view piece) {
    if (piece.empty()) return;
    if (flags.remove_numerals && internal::IsNumeralToken(piece)) return;
    if (flags.remove_symbols && !internal::HasWordByte(piece)) return;
    kept.emplace_back(piece);
  };
  for (std::string_view token : internal::SplitWhitespace(text)) {
    if (flags.remove_numerals && internal::IsNumeralToken(token)) continue;
    if (flags.remove_symbols && !internal::HasWordByte(token)) continue;
    if (!flags.remove_punctuation) {
      keep_piece(token);
      continue;
    }
    // Punctuation becomes a word break; the resulting pieces are screened
    // again so that "x.12" cannot leave a numeral behind.
    std::string spaced;
    spaced.reserve(token.size());
    for (char c : token) {
      const auto u = static_cast<unsigned char>(c);
      spaced.push_back(internal::IsWordByte(u) ? c : ' ');
    }
    for (std::string_view piece : internal::SplitWhitespace(spaced))
      keep_piece(piece);
  }
  return join(kept);
}

// ---------------------------------------------------------------------------
// Length budgets (whitespace tokens)

enum class LengthAction { kTruncate, kDrop, kFlag };

struct LengthPolicy {
  std::size_t max_source_tokens = 8192;
  std::size_t max_target_tokens = 512;
  std::size_t min_target_tokens = 100;
  LengthAction action = LengthAction::kTruncate;

  void validate() const {
    if (max_source_tokens == 0 || max_target_tokens == 0 ||
        min_target_tokens == 0)
      throw std::invalid_argument("length budgets must be positive");
    if (min_target_tokens > max_target_tokens)
      throw std::invalid_argument(
          "min target tokens exceeds max target tokens");
  }
};

struct LengthOutcome {
  std::optional<CorpusRecord> record;  // empty when dropped
  std::vector<std::string> flags;      // violations that were not repaired
};

namespace internal {

inline std::string TruncateWhitespaceTokens(std::string_view text,
                                            std::size_t limit) {
  const auto pieces = SplitWhitespace(text);
  std::string out;
  for (std::size_t i = 0; i < std::min(limit, pieces.size()); ++i) {
    if (i) out.push_back(' ');
    out.append(pieces[i]);
  }
  return out;
}

}  // namespace internal

inline LengthOutcome enforce_length(CorpusRecord record,
                                    const LengthPolicy& policy = {}) {
  policy.validate();
  LengthOutcome out;
  const std::size_t source_len = internal::SplitWhitespace(record.source).size();
  const std::size_t target_len = internal::SplitWhitespace(record.target).size();
  const bool source_long = source_len > policy.max_source_tokens;
  const bool target_long = target_len > policy.max_target_tokens;
  const bool target_short = target_len < policy.min_target_tokens;

  if (policy.action == LengthAction::kDrop &&
      (source_long || target_long || target_short))
    return out;

  if (policy.action == LengthAction::kTruncate) {
    if (source_long)
      record.source =
          internal::TruncateWhitespaceTokens(record.source, policy.max_source_tokens);
    if (target_long)
      record.target =
          internal::TruncateWhitespaceTokens(record.target, policy.max_target_tokens);
  } else {
    if (source_long) out.flags.push_back("source-too-long");
    if (target_long) out.flags.push_back("target-too-long");
  }
  if (target_short) out.flags.push_back("target-too-short");
  out.record = std::move(record);
  return out;
}

// ---------------------------------------------------------------------------
// Entity-based filtering

enum class FilterReason { kNone, kSentenceFilter, kPrecThreshold, kEmptyAfterFilter };

inline std::string_view to_string(FilterReason r) {
  switch (r) {
    case FilterReason::kNone: return "none";
    case FilterReason::kSentenceFilter: return "sentence-filter";
    case FilterReason::kPrecThreshold: return "prec-threshold";
    case FilterReason::kEmptyAfterFilter: return "empty-after-filter";
  }
  return "none";
}

struct DroppedSentence {
  std::size_t index = 0;
  std::vector<std::string> unmatched_keys;
};

struct FilterOutcome {
  std::string record_id;
  std::vector<std::size_t> kept_sentence_indices;
  std::vector<DroppedSentence> dropped_sentences;
  bool record_kept = true;
  FilterReason reason = FilterReason::kNone;
  Ratio prec_s;                  // set by pair filtering
  bool undefined_prec_s = false;  // pair filter kept a record with no entities
};

// Keeps a target sentence only if every entity extracted from it matches the
// source. A record whose target loses every sentence is dropped.
template <EntityExtractor Extractor>
std::pair<CorpusRecord, FilterOutcome> filter_sentences(
    CorpusRecord record, const TokenizedText& source_tokens,
    const Extractor& extractor, const StopwordSet& stopwords,
    const MatchPolicy& policy) {
  if (record.target.empty())
    throw std::invalid_argument("filter_sentences: empty target in record " +
                                record.id);
  FilterOutcome outcome;
  outcome.record_id = record.id;
  const std::vector<std::string> sentences = split_sentences(record.target);
  std::vector<std::string_view> kept;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const EntityInventory inv = extractor.extract(tokenize(sentences[i]));
    DroppedSentence dropped{i, {}};
    KeySet reported;
    for (const auto& m : inv.mentions()) {
      if (!entity_matches_text(m, source_tokens, stopwords, policy) &&
          reported.insert(m.key).second)
        dropped.unmatched_keys.push_back(m.key);
    }
    if (dropped.unmatched_keys.empty()) {
      outcome.kept_sentence_indices.push_back(i);
      kept.push_back(sentences[i]);
    } else {
      outcome.dropped_sentences.push_back(std::move(dropped));
    }
  }
  if (kept.empty()) {
    outcome.record_kept = false;
    outcome.reason = FilterReason::kEmptyAfterFilter;
  } else if (!outcome.dropped_sentences.empty()) {
    outcome.reason = FilterReason::kSentenceFilter;
    std::string target;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      if (i) target.push_back(' ');
      target.append(kept[i]);
    }
    record.target = std::move(target);
  }
  return {std::move(record), std::move(outcome)};
}

template <EntityExtractor Extractor>
std::pair<CorpusRecord, FilterOutcome> filter_sentences(
    CorpusRecord record, const Extractor& extractor,
    const StopwordSet& stopwords, const MatchPolicy& policy) {
  const TokenizedText source = tokenize(record.source);
  return filter_sentences(std::move(record), source, extractor, stopwords,
                          policy);
}

// Keeps the record iff prec_s of the target entities against the source is
// at least `threshold`. A target with no entities is kept and flagged.
inline FilterOutcome filter_pairs(const CorpusRecord& record,
                                  const EntityInventory& target_entities,
                                  const TokenizedText& source_tokens,
                                  double threshold, CountMode mode,
                                  const StopwordSet& stopwords,
                                  const MatchPolicy& policy) {
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw std::invalid_argument("filter_pairs: threshold must be in [0, 1]");
  FilterOutcome outcome;
  outcome.record_id = record.id;
  outcome.prec_s =
      precision_source(target_entities, source_tokens, mode, stopwords, policy);
  if (!outcome.prec_s) {
    outcome.undefined_prec_s = true;
  } else if (*outcome.prec_s < threshold) {
    outcome.record_kept = false;
    outcome.reason = FilterReason::kPrecThreshold;
  }
  return outcome;
}

// ---------------------------------------------------------------------------
// Entity-chain targets

inline constexpr std::string_view kDefaultSeparator = "<ent_sep>";

class SeparatorCollision : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct JaensTarget {
  std::vector<std::string> entity_chain;
  std::string separator;
  std::string summary;

  // "e1, e2, ..., ek SEP summary", or "SEP summary" for an empty chain.
  std::string serialize() const {
    std::string out;
    for (std::size_t i = 0; i < entity_chain.size(); ++i) {
      if (i) out.append(", ");
      out.append(entity_chain[i]);
    }
    if (!entity_chain.empty()) out.push_back(' ');
    out.append(separator);
    out.push_back(' ');
    out.append(summary);
    return out;
  }
};

// Chain = distinct target entity keys in first-occurrence order.
inline JaensTarget jaens_augment(const EntityInventory& target_entities,
                                 std::string summary,
                                 std::string_view separator = kDefaultSeparator) {
  if (separator.empty())
    throw std::invalid_argument("jaens_augment: separator must be non-empty");
  if (summary.find(separator) != std::string::npos)
    throw SeparatorCollision("separator '" + std::string(separator) +
                             "' already occurs in the summary");
  JaensTarget out;
  out.separator = std::string(separator);
  out.summary = std::move(summary);
  for (std::string& key : target_entities.ordered_keys()) {
    if (key.find(separator) != std::string::npos ||
        key.find(',') != std::string::npos)
      throw SeparatorCollision("entity '" + key +
                               "' collides with the chain delimiters");
    out.entity_chain.push_back(std::move(key));
  }
  // The first separator occurrence must be the one serialize() inserts,
  // otherwise jaens_split would cut inside the chain.
  const std::string serialized = out.serialize();
  const std::size_t expected =
      serialized.size() - out.summary.size() - 1 - separator.size();
  if (serialized.find(separator) != expected)
    throw SeparatorCollision("separator '" + std::string(separator) +
                             "' overlaps the entity chain");
  return out;
}

struct JaensSplit {
  std::vector<std::string> entity_chain;
  std::string summary;
  bool separator_found = true;
};

// Splits at the first separator. One space after the separator belongs to
// the serialization and is removed; without a separator the whole text is
// the summary.
inline JaensSplit jaens_split(std::string_view generated,
                              std::string_view separator = kDefaultSeparator) {
  JaensSplit out;
  const auto pos = separator.empty() ? std::string_view::npos
                                     : generated.find(separator);
  if (pos == std::string_view::npos) {
    out.summary = std::string(generated);
    out.separator_found = false;
    return out;
  }
  std::string_view chain = generated.substr(0, pos);
  std::string_view summary = generated.substr(pos + separator.size());
  if (!summary.empty() && summary.front() == ' ') summary.remove_prefix(1);
  out.summary = std::string(summary);
  std::size_t start = 0;
  while (start <= chain.size()) {
    const auto comma = chain.find(',', start);
    const auto end = comma == std::string_view::npos ? chain.size() : comma;
    std::string_view entry = internal::Trim(chain.substr(start, end - start));
    if (!entry.empty()) out.entity_chain.emplace_back(entry);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Corpus statistics

struct Distribution {
  double mean = 0.0;
  double median = 0.0;
  std::size_t min = 0;
  std::size_t max = 0;
};

struct CorpusStats {
  std::size_t records = 0;
  Distribution target_sentences;
  Distribution source_tokens;
  Distribution target_tokens;
  Distribution target_entities;  // NU mentions per target
};

inline Distribution describe(std::vector<std::size_t> values) {
  Distribution d;
  if (values.empty()) return d;
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (std::size_t v : values) sum += static_cast<double>(v);
  d.mean = sum / static_cast<double>(values.size());
  const std::size_t mid = values.size() / 2;
  d.median = values.size() % 2 == 1
                 ? static_cast<double>(values[mid])
                 : (static_cast<double>(values[mid - 1]) +
                    static_cast<double>(values[mid])) / 2.0;
  d.min = values.front();
  d.max = values.back();
  return d;
}

// `target_entities[i]` is the inventory of corpus[i].target.
inline CorpusStats corpus_stats(std::span<const CorpusRecord> corpus,
                                std::span<const EntityInventory> target_entities) {
  if (corpus.empty()) throw std::invalid_argument("corpus_stats: empty corpus");
  if (target_entities.size() != corpus.size())
    throw std::invalid_argument("corpus_stats: one inventory per record needed");
  std::vector<std::size_t> sentences, source_tokens, target_tokens, entities;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    sentences.push_back(split_sentences(corpus[i].target).size());
    source_tokens.push_back(tokenize(corpus[i].source).tokens.size());
    target_tokens.push_back(tokenize(corpus[i].target).tokens.size());
    entities.push_back(target_entities[i].mentions().size());
  }
  CorpusStats stats;
  stats.records = corpus.size();
  stats.target_sentences = describe(std::move(sentences));
  stats.source_tokens = describe(std::move(source_tokens));
  stats.target_tokens = describe(std::move(target_tokens));
  stats.target_entities = describe(std::move(entities));
  return stats;
}

template <EntityExtractor Extractor>
CorpusStats corpus_stats(std::span<const CorpusRecord> corpus,
                         const Extractor& extractor) {
  std::vector<EntityInventory> inventories;
  inventories.reserve(corpus.size());
  for (const auto& r : corpus) inventories.push_back(extractor.extract(tokenize(r.target)));
  return corpus_stats(corpus, inventories);
}

}  // namespace entscore
