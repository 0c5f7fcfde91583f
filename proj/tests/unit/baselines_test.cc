// Copyright 2026 The radlabel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "radlabel/baselines.h"

#include <gtest/gtest.h>

#include "radlabel/error.h"
#include "test_support.h"

namespace radlabel {
namespace {

using testing::case_study_corpus;

LabelVector labels_of(const Corpus& c, std::initializer_list<const char*> names) {
  LabelVector out(c.category_count(), 0);
  for (const char* n : names) out[*c.find_category(n)] = 1;
  return out;
}

TEST(LabelMatch, CaseStudyOverPredicts) {
  const auto c = case_study_corpus();
  const auto lex = default_lexicon(c.categories());
  EXPECT_EQ(label_match(c.reports()[0].text, lex), labels_of(c, {"Cyst", "HCC", "Cirrhosis"}));
  EXPECT_EQ(label_match(c.reports()[1].text, lex), labels_of(c, {"Cyst", "Cirrhosis"}));
  EXPECT_EQ(label_match(c.reports()[2].text, lex), labels_of(c, {"Metastasis"}));
}

TEST(LabelMatch, PluralsAndBoundaries) {
  const auto c = case_study_corpus();
  const auto lex = default_lexicon(c.categories());
  EXPECT_EQ(label_match("Multiple metastases.", lex), labels_of(c, {"Metastasis"}));
  EXPECT_EQ(label_match("Cystic change.", lex), labels_of(c, {}));
  EXPECT_EQ(label_match("Hepatocellular carcinoma in S8.", lex), labels_of(c, {"HCC"}));
  EXPECT_EQ(label_match("Hemangiomas in both lobes.", lex), labels_of(c, {"Hemangioma"}));
}

TEST(LabelMatch, SynonymLexicon) {
  const auto c = case_study_corpus();
  const auto lex = load_lexicon(testing::data_dir() / "synonym_lexicon.json", c.categories());
  EXPECT_EQ(label_match(c.reports()[2].text, lex), labels_of(c, {"Steatosis", "Metastasis"}));
  EXPECT_EQ(label_match(c.reports()[1].text, lex),
            labels_of(c, {"Cyst", "Cirrhosis", "Post-Treatment"}));
}

TEST(NegationCue, CaseStudyMatchesGold) {
  const auto c = case_study_corpus();
  const auto lex = default_lexicon(c.categories());
  const auto cues = default_negation_cues();
  EXPECT_EQ(negation_cue_label(c.reports()[0].text, lex, cues), labels_of(c, {"Cyst", "Cirrhosis"}));
  EXPECT_EQ(negation_cue_label(c.reports()[1].text, lex, cues), labels_of(c, {"Cyst"}));
  EXPECT_EQ(negation_cue_label(c.reports()[2].text, lex, cues), labels_of(c, {}));
}

TEST(NegationCue, OnlyLaterMentionsInTheSentence) {
  const auto c = case_study_corpus();
  const auto lex = default_lexicon(c.categories());
  const auto cues = default_negation_cues();
  EXPECT_EQ(negation_cue_label("Cirrhosis, no ascites.", lex, cues), labels_of(c, {"Cirrhosis"}));
  EXPECT_EQ(negation_cue_label("No ascites. Cirrhosis.", lex, cues), labels_of(c, {"Cirrhosis"}));
  EXPECT_EQ(negation_cue_label("Rule out metastasis; hepatic cyst.", lex, cues),
            labels_of(c, {"Cyst"}));
  // "not" must be a whole word.
  EXPECT_EQ(negation_cue_label("Noted cirrhosis.", lex, cues), labels_of(c, {"Cirrhosis"}));
}

TEST(Lexicon, Validation) {
  const auto cats = liver_ct_categories();
  nlohmann::json doc = {{"categories", {{{"name", "Cyst"}, {"surface_forms", {"cyst"}}}}}};
  EXPECT_THROW(lexicon_from_json(doc, cats), SpecError);
  EXPECT_THROW(cues_from_json(nlohmann::json::array()), SpecError);
  const auto cues = cues_from_json({"No", "R/O"});
  EXPECT_EQ(cues.cues, (std::vector<std::string>{"no", "r/o"}));
  EXPECT_EQ(load_cues(testing::data_dir() / "negation_cues.json").cues,
            default_negation_cues().cues);
}

}  // namespace
}  // namespace radlabel
