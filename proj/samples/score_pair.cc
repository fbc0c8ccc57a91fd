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


// Scores one hypothesis against its source and reference with the library
// API and prints the entity metrics.

#include <iostream>

#include "entscore/entscore.hpp"

int main() {
  using namespace entscore;
  const StopwordSet& stopwords = StopwordSet::Default();

  const TokenizedText source = tokenize(
      "Basal cell carcinoma is the most frequent skin cancer in Iran. "
      "A one-week screening campaign was held in Tehran.");
  const TokenizedText target =
      tokenize("A skin cancer screening campaign was held in Tehran.");
  const TokenizedText hypothesis =
      tokenize("A melanoma screening campaign took place in Tehran.");

  const EntityInventory h = extract_heuristic(hypothesis, stopwords);
  const EntityInventory t = extract_heuristic(target, stopwords);
  const RecordScores scores =
      score_record({&source, &hypothesis, &h, &target, &t}, stopwords, MatchPolicy{});

  auto show = [](const char* name, const Ratio& r) {
    std::cout << name << ": " << (r ? std::to_string(*r) : "undefined") << "\n";
  };
  for (const auto& m : h.mentions()) std::cout << "entity: " << m.key << "\n";
  show("prec_s^U", scores.unique.prec_s);
  show("prec_s^NU", scores.non_unique.prec_s);
  show("F1_t^U", scores.unique.f1_t);
  show("F1_t^NU", scores.non_unique.f1_t);
  show("ROUGE-L", scores.rougeL_f);
  return 0;
}
