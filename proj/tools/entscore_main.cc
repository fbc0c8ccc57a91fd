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


// entscore: entity-level hallucination metrics and corpus transforms for
// summarization data. See README.md for the subcommands.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "entscore/pipeline.hpp"

namespace {

namespace fs = std::filesystem;
using entscore::Command;
using entscore::RunConfig;

struct CliState {
  RunConfig config;
  std::string mode;
  std::string target_match = "exact-key";
  bool no_stopword_block = false;
  std::string length_action = "truncate";
  bool keep_case = false;
  bool keep_citations = false;
  bool keep_numerals = false;
  bool keep_punctuation = false;
  bool keep_symbols = false;
};

void AddSharedOptions(CLI::App* sub, CliState& s) {
  RunConfig& c = s.config;
  sub->add_option("--input", c.input_path, "Input corpus (JSON lines)")->required();
  sub->add_option("--output", c.output_path, "Output path; '-' or omitted writes stdout");
  sub->add_option("--mode", s.mode, "Counting variant")
      ->check(CLI::IsMember({"u", "nu", "both"}));
  sub->add_option("--extractor", c.extractor, "Entity source")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, entscore::ExtractorKind>{
              {"heuristic", entscore::ExtractorKind::kHeuristic},
              {"annotations", entscore::ExtractorKind::kAnnotations}},
          CLI::ignore_case));
  sub->add_option("--stopwords", c.stopwords_path,
                  "Stop-word file replacing the built-in list");
  sub->add_option("--target-match", s.target_match,
                  "Hypothesis/target entity comparison")
      ->check(CLI::IsMember({"exact-key", "partial-text"}));
  sub->add_flag("--no-stopword-block", s.no_stopword_block,
                "Allow stop words to match as single-token components");
  sub->add_flag("--block-numeric", c.policy.numeric_unigram_block,
                "Forbid purely numeric single-token components");
  sub->add_option("--report", c.report, "Report format (score)")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, entscore::ReportFormat>{
              {"structured", entscore::ReportFormat::kStructured},
              {"table", entscore::ReportFormat::kTable}},
          CLI::ignore_case));
  sub->add_option("--strategy", c.strategy, "Filtering strategy (filter)")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, entscore::FilterStrategy>{
              {"sentence", entscore::FilterStrategy::kSentence},
              {"pair", entscore::FilterStrategy::kPair}},
          CLI::ignore_case));
  sub->add_option("--threshold", c.threshold, "Minimum prec_s for pair filtering (filter)");
  sub->add_option("--separator", c.separator, "Chain/summary separator token (augment)");
  sub->add_flag("--strict", c.strict, "Fail with exit code 2 on any malformed record");
  sub->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

std::optional<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  return std::string(std::istreambuf_iterator<char>(in), {});
}

bool WriteFile(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << bytes;
  return static_cast<bool>(out);
}

bool ParentExists(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  return parent.empty() || fs::is_directory(parent);
}

int Usage(const std::string& message) {
  std::cerr << "entscore: " << message << "\n";
  return entscore::kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entity-level hallucination metrics and corpus transforms"};
  app.set_version_flag("--version", std::string(entscore::kVersion));
  app.require_subcommand(1);

  CliState s;
  std::map<CLI::App*, Command> commands;
  auto add = [&](const char* name, const char* help, Command cmd) {
    CLI::App* sub = app.add_subcommand(name, help);
    AddSharedOptions(sub, s);
    commands[sub] = cmd;
    return sub;
  };

  add("score", "Score hypotheses against sources and targets", Command::kScore);

  add("filter", "Entity-based sentence or pair filtering", Command::kFilter);

  add("augment", "Prefix targets with their entity chain", Command::kAugment);

  std::size_t max_source = 8192, max_target = 512, min_target = 100;
  CLI::App* clean = add("clean", "Normalize text and enforce length budgets", Command::kClean);
  clean->add_flag("--keep-case", s.keep_case);
  clean->add_flag("--keep-citations", s.keep_citations);
  clean->add_flag("--keep-numerals", s.keep_numerals);
  clean->add_flag("--keep-punctuation", s.keep_punctuation);
  clean->add_flag("--keep-symbols", s.keep_symbols);
  clean->add_option("--length-action", s.length_action, "What to do with out-of-budget records")
      ->check(CLI::IsMember({"truncate", "drop", "flag", "none"}));
  clean->add_option("--max-source-tokens", max_source);
  clean->add_option("--max-target-tokens", max_target);
  clean->add_option("--min-target-tokens", min_target);

  add("stats", "Corpus statistics", Command::kStats);
  add("extract", "Write per-record entity lists", Command::kExtract);

  for (auto& [sub, cmd] : commands) {
    if (cmd == Command::kFilter || cmd == Command::kClean)
      sub->add_option("--audit", s.config.audit_path,
                      "Audit log path (default: <output>.audit.jsonl)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : entscore::kExitUsage;
  }

  RunConfig& c = s.config;
  for (auto& [sub, cmd] : commands)
    if (sub->parsed()) c.command = cmd;
  if (!s.mode.empty()) {
    c.mode = s.mode == "u"    ? entscore::ModeSelection::kUnique
             : s.mode == "nu" ? entscore::ModeSelection::kNonUnique
                              : entscore::ModeSelection::kBoth;
  }
  c.policy.unigram_stopword_block = !s.no_stopword_block;
  c.policy.target_match_mode = s.target_match == "partial-text"
                                   ? entscore::TargetMatchMode::kPartialText
                                   : entscore::TargetMatchMode::kExactKey;
  c.cleaning = {!s.keep_case, !s.keep_citations, !s.keep_numerals, !s.keep_punctuation,
                !s.keep_symbols};
  if (s.length_action == "none") {
    c.length.reset();
  } else {
    c.length = entscore::LengthPolicy{
        max_source, max_target, min_target,
        s.length_action == "drop"   ? entscore::LengthAction::kDrop
        : s.length_action == "flag" ? entscore::LengthAction::kFlag
                                    : entscore::LengthAction::kTruncate};
  }
  if (c.output_path == "-") c.output_path.clear();
  const bool has_sidecar = c.command == Command::kFilter || c.command == Command::kClean;
  if (has_sidecar && c.audit_path.empty() && !c.output_path.empty())
    c.audit_path = c.output_path + ".audit.jsonl";

  // Everything is validated before any output file is touched.
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    return Usage(e.what());
  }
  const auto input = ReadFile(c.input_path);
  if (!input) return Usage("cannot read input file: " + c.input_path);
  if (!c.output_path.empty() && !ParentExists(c.output_path))
    return Usage("output directory does not exist: " + c.output_path);
  if (!c.audit_path.empty() && !ParentExists(c.audit_path))
    return Usage("audit directory does not exist: " + c.audit_path);
  entscore::StopwordSet custom_stopwords;
  if (!c.stopwords_path.empty()) {
    try {
      custom_stopwords = entscore::StopwordSet::FromFile(c.stopwords_path);
    } catch (const std::exception& e) {
      return Usage(e.what());
    }
  }
  const entscore::StopwordSet& stopwords =
      c.stopwords_path.empty() ? entscore::StopwordSet::Default() : custom_stopwords;

  const entscore::CommandResult result = entscore::run_command(c, *input, stopwords);
  for (const auto& d : result.diagnostics) std::cerr << "entscore: " << d << "\n";
  if (result.exit_code != entscore::kExitOk) return result.exit_code;

  if (c.output_path.empty()) {
    std::cout << result.output;
  } else if (!WriteFile(c.output_path, result.output)) {
    std::cerr << "entscore: cannot write " << c.output_path << "\n";
    return entscore::kExitUsage;
  }
  if (result.audit && !c.audit_path.empty() && !WriteFile(c.audit_path, *result.audit)) {
    std::cerr << "entscore: cannot write " << c.audit_path << "\n";
    return entscore::kExitUsage;
  }
  return entscore::kExitOk;
}
