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
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "entscore/entities.hpp"
#include "entscore/stopwords.hpp"
#include "entscore/textproc.hpp"

namespace entscore {

// How hypothesis and target entities are compared.
enum class TargetMatchMode {
  kExactKey,     // canonical key membership
  kPartialText,  // partial n-gram matching against the other summary's text
};

inline std::string_view to_string(TargetMatchMode mode) {
  return mode == TargetMatchMode::kExactKey ? "exact-key" : "partial-text";
}

struct MatchPolicy {
  bool unigram_stopword_block = true;
  TargetMatchMode target_match_mode = TargetMatchMode::kExactKey;
  bool numeric_unigram_block = false;

  friend bool operator==(const MatchPolicy&, const MatchPolicy&) = default;
};

inline bool is_numeric_token(std::string_view token) {
  return !token.empty() && std::all_of(token.begin(), token.end(), [](char c) {
           return c >= '0' && c <= '9';
         });
}

// True iff some contiguous component of the entity (length >= 1) occurs as
// a contiguous run of `doc_tokens`. Single-token components are subject to
// the policy's stop-word and numeric blocks. Longest components are tried
// first.
inline bool entity_matches_tokens(std::span<const std::string> entity_tokens,
                                  std::span<const std::string> doc_tokens,
                                  const StopwordSet& stopwords,
                                  const MatchPolicy& policy) {
  if (entity_tokens.empty())
    throw std::invalid_argument("entity_matches_text: entity has no tokens");
  const std::size_t k = entity_tokens.size();
  for (std::size_t len = std::min(k, doc_tokens.size()); len >= 1; --len) {
    for (std::size_t start = 0; start + len <= k; ++start) {
      const auto component = entity_tokens.subspan(start, len);
      if (len == 1) {
        if (policy.unigram_stopword_block && stopwords.contains(component[0]))
          continue;
        if (policy.numeric_unigram_block && is_numeric_token(component[0]))
          continue;
      }
      if (std::search(doc_tokens.begin(), doc_tokens.end(), component.begin(),
                      component.end()) != doc_tokens.end())
        return true;
    }
  }
  return false;
}

inline bool entity_matches_text(const EntityMention& entity,
                                const TokenizedText& doc,
                                const StopwordSet& stopwords,
                                const MatchPolicy& policy) {
  return entity_matches_tokens(entity.tokens, doc.tokens, stopwords, policy);
}

// N(x ∩ y) where y is a document: NU counts matching mentions, U counts
// keys with a matching mention. All mentions of one key share its tokens,
// so testing one mention per key is enough.
inline std::size_t count_matched_in_text(const EntityInventory& x,
                                         const TokenizedText& y_text,
                                         CountMode mode,
                                         const StopwordSet& stopwords,
                                         const MatchPolicy& policy) {
  std::size_t count = 0;
  if (mode == CountMode::kNonUnique) {
    for (const auto& m : x.mentions())
      if (entity_matches_text(m, y_text, stopwords, policy)) ++count;
    return count;
  }
  KeySet seen;
  for (const auto& m : x.mentions()) {
    if (!seen.insert(m.key).second) continue;
    if (entity_matches_text(m, y_text, stopwords, policy)) ++count;
  }
  return count;
}

// N(x ∩ y) where y is a key set: exact canonical-key membership.
inline std::size_t count_matched_in_keys(const EntityInventory& x,
                                         const KeySet& y_keys, CountMode mode) {
  if (mode == CountMode::kUnique) {
    return static_cast<std::size_t>(
        std::count_if(x.keys().begin(), x.keys().end(),
                      [&](const std::string& k) { return y_keys.contains(k); }));
  }
  return static_cast<std::size_t>(
      std::count_if(x.mentions().begin(), x.mentions().end(),
                    [&](const EntityMention& m) { return y_keys.contains(m.key); }));
}

enum class MatchDirection { kVsText, kVsKeys };

// The other side of an intersection. Only the member the direction needs
// has to be set.
struct MatchAgainst {
  const TokenizedText* text = nullptr;
  const KeySet* keys = nullptr;
};

// Dispatching form. vs-keys switches to partial matching against
// `against.text` when the policy asks for partial-text target matching.
inline std::size_t intersection_count(const EntityInventory& x,
                                      MatchDirection direction,
                                      const MatchAgainst& against,
                                      CountMode mode,
                                      const StopwordSet& stopwords,
                                      const MatchPolicy& policy) {
  const bool use_text =
      direction == MatchDirection::kVsText ||
      policy.target_match_mode == TargetMatchMode::kPartialText;
  if (use_text) {
    if (against.text == nullptr)
      throw std::invalid_argument("intersection_count: text side is required");
    return count_matched_in_text(x, *against.text, mode, stopwords, policy);
  }
  if (against.keys == nullptr)
    throw std::invalid_argument("intersection_count: key side is required");
  return count_matched_in_keys(x, *against.keys, mode);
}

}  // namespace entscore
