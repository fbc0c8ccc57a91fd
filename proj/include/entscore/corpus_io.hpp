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

// Line-delimited corpus files. Every non-blank line is one JSON object:
//
//   {"id": "...", "source": "...", "target": "...", "hypothesis": "...",
//    "entities_source": [...], "entities_target": [...],
//    "entities_hypothesis": [...]}
//
// Only "id" is always required. A line holding a single "_meta" member is
// provenance written by this toolkit and is skipped on input. Unknown
// members are carried through unchanged.

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entscore/dataset.hpp"
#include "json.hpp"

namespace entscore {

inline constexpr std::string_view kMetaKey = "_meta";

struct CorpusLine {
  std::size_t line_number = 0;  // 1-based
  CorpusRecord record;
  nlohmann::ordered_json raw;  // original object, for pass-through
};

struct CorpusError {
  std::size_t line_number = 0;
  std::string id;  // empty when the id itself is unusable
  std::string message;
};

struct ParsedCorpus {
  std::vector<CorpusLine> lines;
  std::vector<CorpusError> errors;
};

namespace internal {

inline bool ReadOptionalString(const nlohmann::ordered_json& obj,
                               const char* key, std::optional<std::string>& out,
                               std::string& error) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return true;
  if (!it->is_string()) {
    error = std::string("field '") + key + "' must be a string";
    return false;
  }
  out = it->get<std::string>();
  return true;
}

inline bool ReadOptionalList(const nlohmann::ordered_json& obj, const char* key,
                             std::optional<std::vector<std::string>>& out,
                             std::string& error) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return true;
  if (!it->is_array()) {
    error = std::string("field '") + key + "' must be an array of strings";
    return false;
  }
  std::vector<std::string> values;
  for (const auto& v : *it) {
    if (!v.is_string()) {
      error = std::string("field '") + key + "' must be an array of strings";
      return false;
    }
    values.push_back(v.get<std::string>());
  }
  out = std::move(values);
  return true;
}

}  // namespace internal

inline bool is_meta_line(const nlohmann::ordered_json& obj) {
  return obj.is_object() && obj.size() == 1 && obj.contains(kMetaKey);
}

// Parses every line; malformed ones become CorpusError entries and do not
// stop parsing. Duplicate ids are errors on the later occurrence.
inline ParsedCorpus parse_corpus(std::string_view bytes) {
  ParsedCorpus out;
  std::set<std::string, std::less<>> seen_ids;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    auto eol = bytes.find('\n', pos);
    if (eol == std::string_view::npos) eol = bytes.size();
    std::string_view line = bytes.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_number;
    if (internal::Trim(line).empty()) continue;

    nlohmann::ordered_json obj;
    try {
      obj = nlohmann::ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      out.errors.push_back({line_number, {}, std::string("invalid JSON: ") + e.what()});
      continue;
    }
    if (!obj.is_object()) {
      out.errors.push_back({line_number, {}, "line is not a JSON object"});
      continue;
    }
    if (is_meta_line(obj)) continue;

    CorpusLine parsed;
    parsed.line_number = line_number;
    auto id = obj.find("id");
    if (id == obj.end() || !id->is_string() || id->get<std::string>().empty()) {
      out.errors.push_back({line_number, {}, "missing or empty string field 'id'"});
      continue;
    }
    parsed.record.id = id->get<std::string>();
    if (!seen_ids.insert(parsed.record.id).second) {
      out.errors.push_back({line_number, parsed.record.id, "duplicate id"});
      continue;
    }

    std::string error;
    std::optional<std::string> source, target;
    CorpusRecord& r = parsed.record;
    const bool ok =
        internal::ReadOptionalString(obj, "source", source, error) &&
        internal::ReadOptionalString(obj, "target", target, error) &&
        internal::ReadOptionalString(obj, "hypothesis", r.hypothesis, error) &&
        internal::ReadOptionalList(obj, "entities_source", r.entities_source, error) &&
        internal::ReadOptionalList(obj, "entities_target", r.entities_target, error) &&
        internal::ReadOptionalList(obj, "entities_hypothesis", r.entities_hypothesis,
                                   error);
    if (!ok) {
      out.errors.push_back({line_number, r.id, error});
      continue;
    }
    // Absent text fields are kept distinguishable from empty ones through
    // the raw object; the record itself stores "".
    r.source = source.value_or("");
    r.target = target.value_or("");
    parsed.raw = std::move(obj);
    out.lines.push_back(std::move(parsed));
  }
  return out;
}

inline bool has_field(const CorpusLine& line, std::string_view key) {
  auto it = line.raw.find(key);
  return it != line.raw.end() && !it->is_null();
}

// Writes `record` back over the original object, keeping member order and
// unknown members.
inline nlohmann::ordered_json to_json(const CorpusLine& line) {
  nlohmann::ordered_json obj = line.raw.is_object() ? line.raw
                                                    : nlohmann::ordered_json::object();
  const CorpusRecord& r = line.record;
  obj["id"] = r.id;
  if (obj.contains("source") || !r.source.empty()) obj["source"] = r.source;
  if (obj.contains("target") || !r.target.empty()) obj["target"] = r.target;
  if (r.hypothesis) obj["hypothesis"] = *r.hypothesis;
  if (r.entities_source) obj["entities_source"] = *r.entities_source;
  if (r.entities_target) obj["entities_target"] = *r.entities_target;
  if (r.entities_hypothesis) obj["entities_hypothesis"] = *r.entities_hypothesis;
  return obj;
}

inline std::string meta_line(const nlohmann::ordered_json& meta) {
  nlohmann::ordered_json obj;
  obj[std::string(kMetaKey)] = meta;
  return obj.dump();
}

}  // namespace entscore
