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
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace entscore {

// Half-open token range [begin, end) inside TokenizedText::tokens.
struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  friend bool operator==(const TokenRange&, const TokenRange&) = default;
};

// Normalized view of a document over which all matching runs.
//
// `surfaces[i]` is the whitespace-delimited piece of the raw text that
// produced `tokens[i]`. Sentences whose pieces all normalize to nothing do
// not get an entry in `sentence_bounds`.
struct TokenizedText {
  std::vector<std::string> tokens;
  std::vector<std::string> surfaces;
  std::vector<TokenRange> sentence_bounds;
  std::size_t raw_len = 0;

  std::span<const std::string> sentence_tokens(std::size_t sentence) const {
    const TokenRange& r = sentence_bounds.at(sentence);
    return std::span<const std::string>(tokens).subspan(r.begin, r.size());
  }
};

namespace internal {

inline bool IsAsciiAlnum(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z');
}

// Bytes >= 0x80 belong to UTF-8 sequences and are treated as word bytes.
inline bool IsWordByte(unsigned char c) { return c >= 0x80 || IsAsciiAlnum(c); }

inline bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

inline char AsciiLower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = AsciiLower(c);
  return out;
}

inline std::string_view Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && IsSpace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && IsSpace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::vector<std::string_view> SplitWhitespace(std::string_view s) {
  std::vector<std::string_view> pieces;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && IsSpace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !IsSpace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) pieces.push_back(s.substr(start, i - start));
  }
  return pieces;
}

inline bool IsSentenceDelimiter(char c) {
  return c == '.' || c == '!' || c == '?';
}

// Words that, when directly followed by a period, do not end a sentence.
inline constexpr std::array<std::string_view, 22> kAbbreviations = {
    "fig",  "figs", "al",  "dr",  "mr",   "mrs",  "ms",    "prof",
    "e.g",  "i.e",  "vs",  "cf",  "eq",   "eqs",  "ref",   "refs",
    "approx", "ca", "vol", "pp",  "jr",   "sr"};

inline bool IsAbbreviation(std::string_view word) {
  // Strip leading punctuation such as "(fig".
  std::size_t b = 0;
  while (b < word.size() && !IsWordByte(static_cast<unsigned char>(word[b])))
    ++b;
  const std::string lowered = AsciiLower(word.substr(b));
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), lowered) !=
         kAbbreviations.end();
}

}  // namespace internal

// Lowercases ASCII letters, drops every punctuation byte except a hyphen
// that sits between two word characters. Total; may return "".
inline std::string normalize_token(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto c = static_cast<unsigned char>(raw[i]);
    if (internal::IsWordByte(c)) {
      out.push_back(internal::AsciiLower(static_cast<char>(c)));
    } else if (c == '-' && i > 0 && i + 1 < raw.size() &&
               internal::IsWordByte(static_cast<unsigned char>(raw[i - 1])) &&
               internal::IsWordByte(static_cast<unsigned char>(raw[i + 1]))) {
      out.push_back('-');
    }
  }
  return out;
}

// Splits at '.', '!' or '?' (runs of them count as one delimiter) when
// followed by whitespace or end of text. A period right after a known
// abbreviation does not split. Returned sentences are whitespace-trimmed
// and never empty.
inline std::vector<std::string> split_sentences(std::string_view raw) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  std::size_t i = 0;
  auto emit = [&](std::size_t end) {
    std::string_view piece = internal::Trim(raw.substr(start, end - start));
    if (!piece.empty()) sentences.emplace_back(piece);
    start = end;
  };
  while (i < raw.size()) {
    if (!internal::IsSentenceDelimiter(raw[i])) {
      ++i;
      continue;
    }
    const std::size_t run_begin = i;
    while (i < raw.size() && internal::IsSentenceDelimiter(raw[i])) ++i;
    const bool at_boundary =
        i == raw.size() || internal::IsSpace(static_cast<unsigned char>(raw[i]));
    if (!at_boundary) continue;
    if (raw[run_begin] == '.' && i - run_begin == 1) {
      std::size_t w = run_begin;
      while (w > start && !internal::IsSpace(static_cast<unsigned char>(raw[w - 1])))
        --w;
      if (internal::IsAbbreviation(raw.substr(w, run_begin - w))) continue;
    }
    emit(i);
  }
  emit(raw.size());
  return sentences;
}

// Whitespace split + normalize_token, dropping pieces that normalize to
// nothing. Stop words stay in the stream.
inline TokenizedText tokenize(std::string_view raw) {
  TokenizedText out;
  out.raw_len = raw.size();
  for (const std::string& sentence : split_sentences(raw)) {
    const std::size_t begin = out.tokens.size();
    for (std::string_view piece : internal::SplitWhitespace(sentence)) {
      std::string token = normalize_token(piece);
      if (token.empty()) continue;
      out.tokens.push_back(std::move(token));
      out.surfaces.emplace_back(piece);
    }
    if (out.tokens.size() > begin)
      out.sentence_bounds.push_back({begin, out.tokens.size()});
  }
  return out;
}

// Contiguous windows of length n, as views into `tokens`.
inline std::vector<std::span<const std::string>> ngrams(
    std::span<const std::string> tokens, std::size_t n) {
  if (n == 0) throw std::invalid_argument("ngrams: n must be >= 1");
  std::vector<std::span<const std::string>> out;
  if (tokens.size() < n) return out;
  out.reserve(tokens.size() - n + 1);
  for (std::size_t i = 0; i + n <= tokens.size(); ++i)
    out.push_back(tokens.subspan(i, n));
  return out;
}

inline std::string join(std::span<const std::string> tokens,
                        std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.append(sep);
    out.append(tokens[i]);
  }
  return out;
}

}  // namespace entscore
