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

#include "radlabel/template_generation.h"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "radlabel/error.h"
#include "radlabel/template_selection.h"
#include "test_support.h"

namespace radlabel {
namespace {

using testing::case_study_corpus;

Verbalizer aligned(const Corpus& c) {
  return align(liver_ct_verbalizer(VerbalizerMode::kMulti), c.categories());
}

TEST(FilledInputs, OnePerPositive) {
  const auto c = case_study_corpus();
  const auto inputs = filled_inputs(c, aligned(c));
  ASSERT_EQ(inputs.size(), 6u);
  EXPECT_EQ(inputs[0].report_id, "report1");
  EXPECT_EQ(inputs[0].label_word, "cyst");
  EXPECT_EQ(inputs[5].label_word, "steatosis");
}

TEST(Grammar, LogProbByHand) {
  GrammarTemplateGenerator g;
  const FilledInput in{"r", "Mild liver cirrhosis.", "cirrhosis"};
  Template t;
  t.format = TemplateFormat::kAnswerFirst;
  t.prefix = "Liver";
  t.infix = "in";
  // "liver" occurs in the report, "in" does not.
  EXPECT_NEAR(g.log_prob(t, in), std::log(0.5) + std::log(0.1) + std::log(0.9), 1e-12);
}

TEST(Candidates, UniqueBoundedAndRanked) {
  const auto c = case_study_corpus();
  const auto v = aligned(c);
  GrammarTemplateGenerator g;
  const auto set = generate_candidates(g, c, v, 5);
  EXPECT_LE(set.candidates.size(), 10u);
  std::set<std::string> patterns;
  std::size_t per[2] = {0, 0};
  for (const auto& t : set.candidates) {
    patterns.insert(t.pattern());
    ++per[t.format == TemplateFormat::kAnswerFirst];
  }
  EXPECT_EQ(patterns.size(), set.candidates.size());
  EXPECT_EQ(per[0], 5u);
  EXPECT_EQ(per[1], 5u);

  const auto ranked = rank_candidates(set, c, v, g);
  ASSERT_EQ(ranked.candidates.size(), set.candidates.size());
  const auto inputs = filled_inputs(c, v);
  for (std::size_t i = 0; i < ranked.candidates.size(); ++i) {
    if (i > 0) {
      EXPECT_GE(ranked.scores[i - 1], ranked.scores[i]);
    }
    double sum = 0.0;
    for (const auto& in : inputs) sum += g.log_prob(ranked.candidates[i], in);
    EXPECT_DOUBLE_EQ(ranked.scores[i], sum);
  }
  const auto doc = candidates_to_json(ranked);
  ASSERT_EQ(doc.size(), ranked.candidates.size());
  EXPECT_EQ(doc[0]["pattern"], ranked.candidates[0].pattern());
}

class FailingGenerator final : public TemplateGenerator {
 public:
  std::string name() const override { return "failing"; }
  std::vector<Template> propose(const FilledInput&, TemplateFormat, std::size_t) override {
    throw std::runtime_error("out of memory");
  }
  double log_prob(const Template&, const FilledInput&) override { return NAN; }
};

TEST(Candidates, GeneratorErrorsNameTheReport) {
  const auto c = case_study_corpus();
  FailingGenerator g;
  try {
    generate_candidates(g, c, aligned(c), 3);
    FAIL() << "expected Error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("report1"), std::string::npos);
  }
  CandidateSet one;
  one.candidates.push_back(manual_template());
  one.scores.push_back(0);
  EXPECT_THROW(rank_candidates(one, c, aligned(c), g), Error);
}

TEST(SelectBest, HighestTrainingF1) {
  const auto c = case_study_corpus();
  CandidateSet set;
  set.candidates = reference_auto_templates();
  set.candidates.push_back(manual_template());
  set.scores.assign(set.candidates.size(), 0.0);
  TrainConfig cfg;
  cfg.epochs = 4;
  cfg.learning_rate = 5e-3;
  const TemplateModelFactory factory = [&](const Template& t) {
    ToyMlmConfig tc;
    tc.dim = 6;
    tc.max_len = 96;
    tc.seed = 1;
    return make_toy_model(c, liver_ct_verbalizer(VerbalizerMode::kMulti), t, tc);
  };
  const auto r = select_best(set, c, factory, cfg);
  ASSERT_EQ(r.outcomes.size(), set.candidates.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < r.outcomes.size(); ++i) {
    ASSERT_TRUE(r.outcomes[i].ok);
    if (r.outcomes[i].train_macro_f1 > r.outcomes[best].train_macro_f1) best = i;
  }
  EXPECT_EQ(r.best_index, best);
  EXPECT_EQ(r.best.pattern(), set.candidates[best].pattern());
}

TEST(SelectBest, SkipsFailingCandidates) {
  const auto c = case_study_corpus();
  CandidateSet set;
  set.candidates = {manual_template(), reference_auto_templates()[0]};
  set.scores = {0, 0};
  TrainConfig cfg;
  cfg.epochs = 1;
  const auto r = select_best(
      set, c,
      [&](const Template& t) {
        if (t.id == "manual") throw Error("no scorer");
        return testing::small_model(c, 1);
      },
      cfg);
  EXPECT_FALSE(r.outcomes[0].ok);
  EXPECT_EQ(r.outcomes[0].error, "no scorer");
  EXPECT_EQ(r.best_index, 1u);
  EXPECT_THROW(select_best(
                   set, c, [](const Template&) -> PromptRadModel { throw Error("x"); }, cfg),
               Error);
}

}  // namespace
}  // namespace radlabel
