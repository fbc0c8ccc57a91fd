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

#include <array>
#include <fstream>
#include <istream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "entscore/textproc.hpp"

namespace entscore {

// Built-in English list, version 1. The full list is reproduced in
// docs/stopwords.md; changing it requires bumping kDefaultStopwordsVersion.
inline constexpr int kDefaultStopwordsVersion = 1;

inline constexpr std::array<std::string_view, 179> kDefaultStopwords = {
    "i",          "me",       "my",       "myself",    "we",
    "our",        "ours",     "ourselves", "you",      "you're",
    "you've",     "you'll",   "you'd",    "your",      "yours",
    "yourself",   "yourselves", "he",     "him",       "his",
    "himself",    "she",      "she's",    "her",       "hers",
    "herself",    "it",       "it's",     "its",       "itself",
    "they",       "them",     "their",    "theirs",    "themselves",
    "what",       "which",    "who",      "whom",      "this",
    "that",       "that'll",  "these",    "those",     "am",
    "is",         "are",      "was",      "were",      "be",
    "been",       "being",    "have",     "has",       "had",
    "having",     "do",       "does",     "did",       "doing",
    "a",          "an",       "the",      "and",       "but",
    "if",         "or",       "because",  "as",        "until",
    "while",      "of",       "at",       "by",        "for",
    "with",       "about",    "against",  "between",   "into",
    "through",    "during",   "before",   "after",     "above",
    "below",      "to",       "from",     "up",        "down",
    "in",         "out",      "on",       "off",       "over",
    "under",      "again",    "further",  "then",      "once",
    "here",       "there",    "when",     "where",     "why",
    "how",        "all",      "any",      "both",      "each",
    "few",        "more",     "most",     "other",     "some",
    "such",       "no",       "nor",      "not",       "only",
    "own",        "same",     "so",       "than",      "too",
    "very",       "s",        "t",        "can",       "will",
    "just",       "don",      "don't",    "should",    "should've",
    "now",        "d",        "ll",       "m",         "o",
    "re",         "ve",       "y",        "ain",       "aren",
    "aren't",     "couldn",   "couldn't", "didn",      "didn't",
    "doesn",      "doesn't",  "hadn",     "hadn't",    "hasn",
    "hasn't",     "haven",    "haven't",  "isn",       "isn't",
    "ma",         "mightn",   "mightn't", "mustn",     "mustn't",
    "needn",      "needn't",  "shan",     "shan't",    "shouldn",
    "shouldn't",  "wasn",     "wasn't",   "weren",     "weren't",
    "won",        "won't",    "wouldn",   "wouldn't"};
static_assert(!kDefaultStopwords.back().empty());

// Set of normalized tokens that never match on their own.
//
// Entries are stored through normalize_token so that membership agrees with
// the token stream ("don't" is stored as "dont").
class StopwordSet {
 public:
  StopwordSet() = default;

  template <typename Range>
  explicit StopwordSet(const Range& words) {
    for (const auto& w : words) insert(w);
  }

  static const StopwordSet& Default() {
    static const StopwordSet kSet(kDefaultStopwords);
    return kSet;
  }

  // One token per line; '#' starts a comment; blank lines are ignored.
  static StopwordSet FromStream(std::istream& in) {
    StopwordSet set;
    std::string line;
    while (std::getline(in, line)) {
      std::string_view view(line);
      if (auto hash = view.find('#'); hash != std::string_view::npos)
        view = view.substr(0, hash);
      view = internal::Trim(view);
      if (!view.empty()) set.insert(view);
    }
    return set;
  }

  static StopwordSet FromFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stop-word file: " + path);
    return FromStream(in);
  }

  bool contains(std::string_view token) const {
    return words_.find(token) != words_.end();
  }

  std::size_t size() const { return words_.size(); }
  const std::set<std::string, std::less<>>& words() const { return words_; }

 private:
  void insert(std::string_view word) {
    std::string normalized = normalize_token(word);
    if (!normalized.empty()) words_.insert(std::move(normalized));
  }

  std::set<std::string, std::less<>> words_;
};

}  // namespace entscore
