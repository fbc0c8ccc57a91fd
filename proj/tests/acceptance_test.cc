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


// Acceptance suite. Each TEST below is one numbered criterion; a listener
// prints a single PASS/FAIL line per criterion after it runs.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "entscore/entscore.hpp"
#include "entscore/pipeline.hpp"
#include "gtest/gtest.h"
#include "json.hpp"
#include "oracle.hpp"

namespace entscore {
namespace {

using Tokens = std::vector<std::string>;
using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

const StopwordSet& Stop() { return StopwordSet::Default(); }

// Random prose over a small vocabulary, with sentence punctuation, so the
// heuristic extractor produces overlapping multi-word phrases.
std::string RandomProse(std::mt19937& rng, std::size_t max_sentences) {
  static const std::vector<std::string> kWords = {
      "skin",   "cancer", "screening", "Tehran", "basal", "cell", "carcinoma",
      "the",    "of",     "in",        "was",    "a",     "risk", "melanoma",
      "patients", "and",  "2019",      "clinic", "Iran",  "with"};
  std::uniform_int_distribution<std::size_t> sentences(1, max_sentences);
  std::uniform_int_distribution<std::size_t> length(1, 7);
  std::uniform_int_distribution<std::size_t> word(0, kWords.size() - 1);
  std::string out;
  const std::size_t n = sentences(rng);
  for (std::size_t s = 0; s < n; ++s) {
    if (s) out += ' ';
    const std::size_t len = length(rng);
    for (std::size_t i = 0; i < len; ++i) {
      if (i) out += ' ';
      out += kWords[word(rng)];
    }
    out += '.';
  }
  return out;
}

struct Criterion {
  const char* test;
  int number;
  const char* title;
};

constexpr Criterion kCriteria[] = {
    {"C1_MetricOracleEquivalence", 1, "metric-oracle equivalence"},
    {"C2_PairFilterGuarantee", 2, "pair-filter guarantee"},
    {"C3_SentenceFilterGuarantees", 3, "sentence-filter guarantees"},
    {"C4_ChainRoundTrip", 4, "entity-chain round trip"},
    {"C5_PublishedEntityTable", 5, "published entity table fixture"},
    {"C6_RougeSanity", 6, "ROUGE sanity"},
    {"C7_Determinism", 7, "determinism across --jobs"},
    {"C8_InvariantSuite", 8, "invariant suite"},
};

class CriterionPrinter : public testing::EmptyTestEventListener {
  void OnTestEnd(const testing::TestInfo& info) override {
    for (const auto& c : kCriteria) {
      if (std::string(info.name()) != c.test) continue;
      std::printf("[acceptance] criterion %d %-34s %s\n", c.number, c.title,
                  info.result()->Passed() ? "PASS" : "FAIL");
      std::fflush(stdout);
    }
  }
};

// 1. Every entity metric equals the brute-force enumeration exactly.
TEST(Acceptance, C1_MetricOracleEquivalence) {
  std::mt19937 rng(1001);
  const auto start = Clock::now();
  std::size_t instances = 0;
  for (int iter = 0; iter < 1500; ++iter) {
    const auto hm = oracle::RandomMentions(rng, 8);
    const auto tm = oracle::RandomMentions(rng, 8);
    const auto src = oracle::RandomTokens(rng, 0, 30);
    const auto h_doc = oracle::RandomTokens(rng, 0, 30);
    const auto t_doc = oracle::RandomTokens(rng, 0, 30);
    MatchPolicy policy;
    policy.unigram_stopword_block = rng() % 4 != 0;
    policy.numeric_unigram_block = rng() % 4 == 0;
    const bool partial = rng() % 3 == 0;
    if (partial) policy.target_match_mode = TargetMatchMode::kPartialText;

    const EntityInventory h = oracle::Inventory(hm);
    const EntityInventory t = oracle::Inventory(tm);
    const TokenizedText s_text = oracle::Document(src);
    const TokenizedText h_text = oracle::Document(h_doc);
    const TokenizedText t_text = oracle::Document(t_doc);
    const RecordScores got =
        score_record({&s_text, &h_text, &h, &t_text, &t}, Stop(), policy);
    for (bool unique : {true, false}) {
      const oracle::Ratios want = oracle::Metrics(
          hm, tm, src, h_doc, t_doc, unique, Stop(), policy.unigram_stopword_block,
          policy.numeric_unigram_block, partial);
      const EntityScores& e = unique ? got.unique : got.non_unique;
      ASSERT_EQ(e.prec_s, want.prec_s) << "instance " << iter;
      ASSERT_EQ(e.prec_t, want.prec_t) << "instance " << iter;
      ASSERT_EQ(e.recall_t, want.recall_t) << "instance " << iter;
      ASSERT_EQ(e.f1_t, want.f1_t) << "instance " << iter;
    }
    ++instances;
  }
  EXPECT_GE(instances, 1000u);
  EXPECT_LT(Seconds(start), 10.0);
}

// 2. After pair filtering at 1.0 every retained record is fully grounded.
TEST(Acceptance, C2_PairFilterGuarantee) {
  std::mt19937 rng(2002);
  const auto start = Clock::now();
  std::size_t retained = 0, retained_without_entities = 0;
  for (int i = 0; i < 500; ++i) {
    CorpusRecord r;
    r.id = "r" + std::to_string(i);
    r.source = RandomProse(rng, 4);
    r.target = RandomProse(rng, 3);
    const CountMode mode = i % 2 ? CountMode::kUnique : CountMode::kNonUnique;
    const TokenizedText src = tokenize(r.source);
    const EntityInventory t = extract_heuristic(tokenize(r.target), Stop());
    const FilterOutcome o = filter_pairs(r, t, src, 1.0, mode, Stop(), {});
    if (!o.record_kept) continue;
    ++retained;
    const Ratio p = precision_source(t, src, mode, Stop(), {});
    if (!p) {
      ++retained_without_entities;
      EXPECT_TRUE(o.undefined_prec_s);
      continue;
    }
    ASSERT_EQ(*p, 1.0) << r.id;
  }
  EXPECT_GT(retained, retained_without_entities);
  EXPECT_LT(Seconds(start), 5.0);
}

// 3. Sentence filtering keeps an ordered subset of sentences whose entities
// all occur in the source.
TEST(Acceptance, C3_SentenceFilterGuarantees) {
  const auto start = Clock::now();
  const HeuristicExtractor extractor(Stop());

  CorpusRecord one;
  one.id = "single";
  one.source = "Basal cell carcinoma was common in Tehran.";
  one.target = "Melanoma was common in Shiraz.";
  const auto [dropped, why] = filter_sentences(one, extractor, Stop(), {});
  EXPECT_FALSE(why.record_kept);
  EXPECT_EQ(why.reason, FilterReason::kEmptyAfterFilter);

  CorpusRecord mixed = one;
  mixed.id = "mixed";
  mixed.target = "Carcinoma in Tehran. Melanoma in Shiraz. Basal cell carcinoma.";
  const auto [kept, how] = filter_sentences(mixed, extractor, Stop(), {});
  EXPECT_TRUE(how.record_kept);
  EXPECT_EQ(kept.target, "Carcinoma in Tehran. Basal cell carcinoma.");
  EXPECT_EQ(how.kept_sentence_indices, (std::vector<std::size_t>{0, 2}));

  std::mt19937 rng(3003);
  std::size_t partially_kept = 0;
  for (int i = 0; i < 300; ++i) {
    CorpusRecord r;
    r.id = "r" + std::to_string(i);
    r.source = RandomProse(rng, 4);
    r.target = RandomProse(rng, 4);
    const std::vector<std::string> before = split_sentences(r.target);
    const auto [out, outcome] = filter_sentences(r, extractor, Stop(), {});
    if (!outcome.record_kept) continue;
    const std::vector<std::string> after = split_sentences(out.target);
    ASSERT_EQ(after.size(), outcome.kept_sentence_indices.size()) << r.id;
    for (std::size_t k = 0; k < after.size(); ++k) {
      ASSERT_EQ(after[k], before[outcome.kept_sentence_indices[k]]) << r.id;
      if (k) {
        ASSERT_LT(outcome.kept_sentence_indices[k - 1], outcome.kept_sentence_indices[k]);
      }
    }
    const EntityInventory t = extractor.extract(tokenize(out.target));
    const Ratio p =
        precision_source(t, tokenize(out.source), CountMode::kNonUnique, Stop(), {});
    if (p) {
      ASSERT_EQ(*p, 1.0) << r.id;
    }
    if (!outcome.dropped_sentences.empty()) ++partially_kept;
  }
  EXPECT_GT(partially_kept, 0u);
  EXPECT_LT(Seconds(start), 1.0);
}

// 4. split(serialize(augment(r))) gives back the chain and summary.
TEST(Acceptance, C4_ChainRoundTrip) {
  const auto start = Clock::now();
  std::mt19937 rng(4004);
  std::size_t empty_chains = 0;
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> annotations;
    const std::size_t n = i % 10 == 0 ? 0 : rng() % 6;
    for (std::size_t k = 0; k < n; ++k) annotations.push_back(RandomProse(rng, 1));
    const EntityInventory inv = ingest_annotations(annotations);
    const std::string summary = RandomProse(rng, 3);
    const JaensTarget jt = jaens_augment(inv, summary);
    const JaensSplit back = jaens_split(jt.serialize());
    ASSERT_TRUE(back.separator_found);
    ASSERT_EQ(back.entity_chain, inv.ordered_keys()) << jt.serialize();
    ASSERT_EQ(back.summary, summary);
    if (inv.empty()) ++empty_chains;
  }
  EXPECT_GT(empty_chains, 0u);
  EXPECT_LT(Seconds(start), 1.0);
}

// 5. Published entity lists ingested as annotations. Counts are exact; the
// matched counts depend on the component rule and are checked within 3.
//
// Matching against the article uses its entity list, one entity per
// segment. Matching against the abstract uses partial matching against the
// abstract entity set.
TEST(Acceptance, C5_PublishedEntityTable) {
  const auto start = Clock::now();
  std::ifstream in(std::string(ENTSCORE_TEST_DATA_DIR) + "/case_study_entities.json");
  ASSERT_TRUE(in) << "missing fixture";
  const nlohmann::json table = nlohmann::json::parse(in);

  const EntityInventory article =
      ingest_annotations(table["article"].get<std::vector<std::string>>());
  const EntityInventory abstract_set =
      ingest_annotations(table["abstract"].get<std::vector<std::string>>());
  EXPECT_EQ(inventory_count(article, CountMode::kNonUnique),
            table["article_count"].get<std::size_t>());
  EXPECT_EQ(inventory_count(abstract_set, CountMode::kNonUnique),
            table["abstract_count"].get<std::size_t>());

  auto segmented = [](const EntityInventory& inv) {
    std::string text;
    for (const auto& m : inv.mentions()) text += m.key + ". ";
    return tokenize(text);
  };
  const TokenizedText article_text = segmented(article);
  const TokenizedText abstract_text = segmented(abstract_set);

  for (const auto& sys : table["systems"]) {
    const std::string name = sys["name"];
    const EntityInventory h =
        ingest_annotations(sys["entities"].get<std::vector<std::string>>());
    const std::size_t count = inventory_count(h, CountMode::kNonUnique);
    EXPECT_EQ(count, sys["count"].get<std::size_t>()) << name;

    const std::size_t vs_article =
        count_matched_in_text(h, article_text, CountMode::kNonUnique, Stop(), {});
    MatchPolicy partial;
    partial.target_match_mode = TargetMatchMode::kPartialText;
    const std::size_t vs_abstract =
        intersection_count(h, MatchDirection::kVsKeys, {&abstract_text, &abstract_set.keys()},
                           CountMode::kNonUnique, Stop(), partial);
    const std::size_t exact =
        intersection_count(h, MatchDirection::kVsKeys, {nullptr, &abstract_set.keys()},
                           CountMode::kNonUnique, Stop(), {});
    const long want_article = sys["matched_article"].get<long>();
    const long want_abstract = sys["matched_abstract"].get<long>();
    std::printf("  %-20s count %zu  article %zu (published %ld)  abstract %zu "
                "(published %ld, exact-key %zu)\n",
                name.c_str(), count, vs_article, want_article, vs_abstract,
                want_abstract, exact);
    EXPECT_LE(std::labs(static_cast<long>(vs_article) - want_article), 3) << name;
    EXPECT_LE(std::labs(static_cast<long>(vs_abstract) - want_abstract), 3) << name;
  }
  EXPECT_LT(Seconds(start), 5.0);
}

// 6. ROUGE identities and hand-computed values.
TEST(Acceptance, C6_RougeSanity) {
  constexpr double kTol = 1e-9;
  const TokenizedText same = tokenize("Skin cancer was common. Screening helps.");
  const std::vector<std::vector<std::string>> same_sents = sentence_token_lists(same);
  EXPECT_NEAR(rouge_n(same.tokens, same.tokens, 1).f1, 1.0, kTol);
  EXPECT_NEAR(rouge_n(same.tokens, same.tokens, 2).f1, 1.0, kTol);
  EXPECT_NEAR(rouge_l(same.tokens, same.tokens).f1, 1.0, kTol);
  EXPECT_NEAR(rouge_lsum(same_sents, same_sents).f1, 1.0, kTol);

  const TokenizedText other = tokenize("Melanoma rates rose. Clinics closed.");
  const auto other_sents = sentence_token_lists(other);
  EXPECT_NEAR(rouge_n(same.tokens, other.tokens, 1).f1, 0.0, kTol);
  EXPECT_NEAR(rouge_n(same.tokens, other.tokens, 2).f1, 0.0, kTol);
  EXPECT_NEAR(rouge_l(same.tokens, other.tokens).f1, 0.0, kTol);
  EXPECT_NEAR(rouge_lsum(same_sents, other_sents).f1, 0.0, kTol);

  const RougeScore r1 = rouge_n(Tokens{"the", "cat"}, Tokens{"the", "cat", "sat"}, 1);
  EXPECT_NEAR(r1.precision, 1.0, kTol);
  EXPECT_NEAR(r1.recall, 2.0 / 3.0, kTol);
  EXPECT_NEAR(r1.f1, 0.8, kTol);

  const RougeScore l = rouge_l(Tokens{"a", "x", "b"}, Tokens{"a", "y", "b"});
  EXPECT_EQ(lcs_length(Tokens{"a", "x", "b"}, Tokens{"a", "y", "b"}), 2u);
  EXPECT_NEAR(l.precision, 2.0 / 3.0, kTol);
  EXPECT_NEAR(l.recall, 2.0 / 3.0, kTol);
  EXPECT_NEAR(l.f1, 2.0 / 3.0, kTol);
}

// 7. Output bytes do not depend on the worker count.
TEST(Acceptance, C7_Determinism) {
  std::mt19937 rng(7007);
  std::string corpus;
  for (int i = 0; i < 100; ++i) {
    nlohmann::ordered_json rec;
    rec["id"] = "doc-" + std::to_string(i);
    rec["source"] = RandomProse(rng, 6);
    rec["target"] = RandomProse(rng, 3);
    rec["hypothesis"] = RandomProse(rng, 3);
    corpus += rec.dump() + "\n";
  }
  for (Command command : {Command::kScore, Command::kFilter, Command::kAugment}) {
    for (FilterStrategy strategy : {FilterStrategy::kSentence, FilterStrategy::kPair}) {
      if (command != Command::kFilter && strategy == FilterStrategy::kPair) continue;
      RunConfig cfg;
      cfg.command = command;
      cfg.input_path = "corpus.jsonl";
      cfg.strategy = strategy;
      cfg.jobs = 1;
      const CommandResult serial = run_command(cfg, corpus, Stop());
      cfg.jobs = 8;
      const CommandResult parallel = run_command(cfg, corpus, Stop());
      ASSERT_EQ(serial.exit_code, kExitOk);
      EXPECT_FALSE(serial.output.empty());
      EXPECT_EQ(serial.output, parallel.output) << static_cast<int>(command);
      EXPECT_EQ(serial.audit, parallel.audit) << static_cast<int>(command);
    }
  }
}

// 8. Generated property checks, at least 200 cases each.
TEST(Acceptance, C8_InvariantSuite) {
  std::mt19937 rng(8008);
  constexpr int kCases = 250;

  for (int i = 0; i < kCases; ++i) {
    const Tokens entity = oracle::RandomTokens(rng, 1, 3);
    const Tokens doc = oracle::RandomTokens(rng, 0, 20);
    Tokens longer = doc;
    const Tokens extra = oracle::RandomTokens(rng, 1, 10);
    longer.insert(rng() % 2 ? longer.end() : longer.begin(), extra.begin(), extra.end());
    const EntityMention m = EntityMention::FromTokens(entity, oracle::Key(entity));
    if (entity_matches_text(m, oracle::Document(doc), Stop(), {})) {
      ASSERT_TRUE(entity_matches_text(m, oracle::Document(longer), Stop(), {}));
    }
  }

  for (int i = 0; i < kCases; ++i) {
    const EntityInventory h = oracle::Inventory(oracle::RandomMentions(rng, 8));
    const TokenizedText doc = oracle::Document(oracle::RandomTokens(rng, 0, 30));
    ASSERT_LE(inventory_count(h, CountMode::kUnique), inventory_count(h, CountMode::kNonUnique));
    ASSERT_LE(count_matched_in_text(h, doc, CountMode::kUnique, Stop(), {}),
              count_matched_in_text(h, doc, CountMode::kNonUnique, Stop(), {}));
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < kCases; ++i) {
    const double p = i % 10 == 0 ? 0.0 : unit(rng);
    const double r = i % 7 == 0 ? 0.0 : unit(rng);
    const double f = f1_target(p, r);
    ASSERT_GE(f, std::min(p, r));
    ASSERT_LE(f, std::max(p, r));
  }

  for (int i = 0; i < kCases; ++i) {
    std::vector<RecordScores> rows(1 + rng() % 30);
    for (auto& row : rows) {
      if (rng() % 4) row.unique.prec_s = unit(rng);
      if (rng() % 4) row.non_unique.f1_t = unit(rng);
      row.rouge1_f = unit(rng);
    }
    const MetricReport a = aggregate(rows);
    std::shuffle(rows.begin(), rows.end(), rng);
    const MetricReport b = aggregate(rows);
    for (std::size_t k = 0; k < a.aggregate.size(); ++k) {
      ASSERT_EQ(a.aggregate[k].mean, b.aggregate[k].mean);
      ASSERT_EQ(a.aggregate[k].defined, b.aggregate[k].defined);
    }
  }
}

}  // namespace
}  // namespace entscore

int main(int argc, char** argv) {
  testing::InitGoogleTest(&argc, argv);
  testing::UnitTest::GetInstance()->listeners().Append(new entscore::CriterionPrinter);
  return RUN_ALL_TESTS();
}
