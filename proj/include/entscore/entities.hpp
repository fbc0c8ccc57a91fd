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
#include <concepts>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entscore/stopwords.hpp"
#include "entscore/textproc.hpp"

namespace entscore {

using KeySet = std::set<std::string, std::less<>>;

// Counting scheme: U over distinct keys, NU over every mention.
enum class CountMode { kUnique, kNonUnique };

inline std::string_view to_string(CountMode mode) {
  return mode == CountMode::kUnique ? "u" : "nu";
}

struct MentionSpan {
  std::size_t sentence = 0;
  TokenRange tokens;
  friend bool operator==(const MentionSpan&, const MentionSpan&) = default;
};

struct EntityMention {
  std::string surface;
  std::vector<std::string> tokens;
  // Absent for ingested annotations that carry no offsets.
  std::optional<MentionSpan> span;
  std::string key;

  static EntityMention FromTokens(std::vector<std::string> tokens,
                                  std::string surface,
                                  std::optional<MentionSpan> span = {}) {
    if (tokens.empty())
      throw std::invalid_argument("entity mention needs at least one token");
    EntityMention m;
    m.key = join(tokens);
    m.tokens = std::move(tokens);
    m.surface = std::move(surface);
    m.span = span;
    return m;
  }
};

// Ordered mention list (NU view) plus the set of their keys (U view). The
// key set is maintained by add() and cannot drift from the mentions.
class EntityInventory {
 public:
  void add(EntityMention mention) {
    keys_.insert(mention.key);
    mentions_.push_back(std::move(mention));
  }

  const std::vector<EntityMention>& mentions() const { return mentions_; }
  const KeySet& keys() const { return keys_; }
  bool empty() const { return mentions_.empty(); }

  // Distinct keys in first-occurrence order.
  std::vector<std::string> ordered_keys() const {
    std::vector<std::string> out;
    KeySet seen;
    for (const auto& m : mentions_)
      if (seen.insert(m.key).second) out.push_back(m.key);
    return out;
  }

 private:
  std::vector<EntityMention> mentions_;
  KeySet keys_;
};

inline std::size_t inventory_count(const EntityInventory& inv, CountMode mode) {
  return mode == CountMode::kUnique ? inv.keys().size() : inv.mentions().size();
}

// Anything that turns a tokenized document into an inventory.
template <typename T>
concept EntityExtractor = requires(const T& e, const TokenizedText& doc) {
  { e.extract(doc) } -> std::convertible_to<EntityInventory>;
};

// Stop-word chunking: every maximal run of non-stop-word tokens inside a
// sentence is one mention.
inline EntityInventory extract_heuristic(const TokenizedText& text,
                                         const StopwordSet& stopwords) {
  EntityInventory inv;
  for (std::size_t s = 0; s < text.sentence_bounds.size(); ++s) {
    const TokenRange bounds = text.sentence_bounds[s];
    std::size_t i = bounds.begin;
    while (i < bounds.end) {
      if (stopwords.contains(text.tokens[i])) {
        ++i;
        continue;
      }
      const std::size_t begin = i;
      while (i < bounds.end && !stopwords.contains(text.tokens[i])) ++i;
      std::vector<std::string> tokens(text.tokens.begin() + begin,
                                      text.tokens.begin() + i);
      std::string surface;
      if (text.surfaces.size() == text.tokens.size()) {
        surface = join(std::span<const std::string>(text.surfaces)
                           .subspan(begin, i - begin));
      } else {
        surface = join(tokens);
      }
      inv.add(EntityMention::FromTokens(std::move(tokens), std::move(surface),
                                        MentionSpan{s, {begin, i}}));
    }
  }
  return inv;
}

// Normalizes each annotation string; strings that normalize to nothing are
// dropped, duplicates are kept.
template <typename Range>
EntityInventory ingest_annotations(const Range& entity_strings) {
  EntityInventory inv;
  for (const auto& raw : entity_strings) {
    std::vector<std::string> tokens;
    for (std::string_view piece : internal::SplitWhitespace(raw)) {
      std::string t = normalize_token(piece);
      if (!t.empty()) tokens.push_back(std::move(t));
    }
    if (tokens.empty()) continue;
    inv.add(EntityMention::FromTokens(std::move(tokens), std::string(raw)));
  }
  return inv;
}

class HeuristicExtractor {
 public:
  explicit HeuristicExtractor(const StopwordSet& stopwords)
      : stopwords_(&stopwords) {}

  EntityInventory extract(const TokenizedText& doc) const {
    return extract_heuristic(doc, *stopwords_);
  }

 private:
  const StopwordSet* stopwords_;
};

// Wraps a fixed list of external annotations. extract() returns the
// annotations that occur as a contiguous token run inside a single sentence
// of `doc`, each positioned at its first occurrence; annotations that cannot
// be located are left out.
class AnnotationExtractor {
 public:
  template <typename Range>
  explicit AnnotationExtractor(const Range& entity_strings)
      : annotations_(ingest_annotations(entity_strings)) {}

  explicit AnnotationExtractor(EntityInventory annotations)
      : annotations_(std::move(annotations)) {}

  const EntityInventory& annotations() const { return annotations_; }

  EntityInventory extract(const TokenizedText& doc) const {
    EntityInventory inv;
    for (const auto& m : annotations_.mentions()) {
      if (auto span = Locate(m.tokens, doc)) {
        EntityMention located = m;
        located.span = span;
        inv.add(std::move(located));
      }
    }
    return inv;
  }

 private:
  static std::optional<MentionSpan> Locate(const std::vector<std::string>& needle,
                                           const TokenizedText& doc) {
    for (std::size_t s = 0; s < doc.sentence_bounds.size(); ++s) {
      const TokenRange b = doc.sentence_bounds[s];
      const auto first = doc.tokens.begin() + b.begin;
      const auto last = doc.tokens.begin() + b.end;
      const auto it = std::search(first, last, needle.begin(), needle.end());
      if (it != last) {
        const auto start = static_cast<std::size_t>(it - doc.tokens.begin());
        return MentionSpan{s, {start, start + needle.size()}};
      }
    }
    return std::nullopt;
  }

  EntityInventory annotations_;
};

static_assert(EntityExtractor<HeuristicExtractor>);
static_assert(EntityExtractor<AnnotationExtractor>);

}  // namespace entscore
