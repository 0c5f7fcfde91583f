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

#include "radlabel/evalkit.h"

#include <cmath>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "radlabel/baselines.h"
#include "radlabel/error.h"
#include "test_support.h"

namespace radlabel {
namespace {

using testing::case_study_corpus;

TEST(F1, KnownValues) {
  EXPECT_NEAR(f1_percent(2, 1, 1), 66.66666666666667, 1e-9);
  EXPECT_EQ(f1_percent(0, 0, 0), 0.0);
  EXPECT_EQ(f1_percent(0, 3, 2), 0.0);
  EXPECT_EQ(f1_percent(5, 0, 0), 100.0);
}

TEST(F1, MacroAndMicroByHand) {
  // Category 0: tp 1, fp 1, fn 0 -> 66.67. Category 1: tp 0, fp 0, fn 1 -> 0.
  const std::vector<LabelVector> preds{{1, 0}, {1, 0}};
  const std::vector<LabelVector> golds{{1, 0}, {0, 1}};
  const auto s = f1_scores(preds, golds);
  EXPECT_NEAR(s.per_category[0], 200.0 / 3.0, 1e-9);
  EXPECT_EQ(s.per_category[1], 0.0);
  EXPECT_NEAR(s.macro, 100.0 / 3.0, 1e-9);
  // Pooled tp 1, fp 1, fn 1 -> 50.
  EXPECT_NEAR(s.micro, 50.0, 1e-9);
  const auto cc = confusion(preds, golds);
  EXPECT_EQ(cc.tn[1], 1u);
  const std::vector<LabelVector> short_gold{{1, 0}};
  EXPECT_THROW(f1_scores(preds, short_gold), Error);
}

TEST(F1, RandomAgainstSetCounting) {
  std::mt19937_64 rng(5);
  for (int draw = 0; draw < 200; ++draw) {
    const std::size_t n = 1 + rng() % 20, cats = 1 + rng() % 7;
    std::vector<LabelVector> p(n, LabelVector(cats)), g(n, LabelVector(cats));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < cats; ++c) {
        p[i][c] = rng() % 2;
        g[i][c] = rng() % 3 == 0;
      }
    }
    const auto s = f1_scores(p, g);
    double macro = 0;
    for (std::size_t c = 0; c < cats; ++c) {
      double inter = 0, np = 0, ng = 0;
      for (std::size_t i = 0; i < n; ++i) {
        inter += p[i][c] && g[i][c];
        np += p[i][c];
        ng += g[i][c];
      }
      const double f = np + ng == 0 ? 0.0 : 100.0 * 2 * inter / (np + ng);
      EXPECT_NEAR(s.per_category[c], f, 1e-9);
      macro += f;
    }
    EXPECT_NEAR(s.macro, macro / static_cast<double>(cats), 1e-9);
  }
}

TEST(MeanStd, SampleDeviation) {
  const std::vector<double> v{80, 90};
  const auto s = mean_std(v);
  EXPECT_DOUBLE_EQ(s.mean, 85.0);
  EXPECT_NEAR(s.stddev, 7.0710678118654755, 1e-12);
  const std::vector<double> one{3};
  EXPECT_EQ(mean_std(one).stddev, 0.0);
}

TEST(Evaluate, OracleLabelerScoresHundred) {
  const auto c = case_study_corpus();
  const auto r = evaluate([](const Report& rep) { return rep.gold; }, c, 0, "oracle");
  for (std::size_t i = 0; i < c.category_count(); ++i) {
    const bool has_gold = c.positive_counts()[i] > 0;
    EXPECT_EQ(r.f1.per_category[i], has_gold ? 100.0 : 0.0);
  }
  const std::vector<RunResult> runs{r};
  const auto csv = results_csv(runs, c.categories());
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "seed,config,Cyst,HCC,Post-Treatment,Cirrhosis,Steatosis,Metastasis,Hemangioma,macro,"
            "micro");
  EXPECT_NE(csv.find("0,oracle,100,100,100,100,100,0,0,"), std::string::npos);
}

TEST(MultiRun, RecordsFailures) {
  const auto c = case_study_corpus();
  const std::vector<std::uint64_t> seeds{0, 1, 2};
  const auto s = multi_run(
      [&](std::uint64_t seed) {
        if (seed == 1) throw Error("boom");
        return evaluate([](const Report& r) { return r.gold; }, c, seed);
      },
      seeds);
  EXPECT_EQ(s.runs.size(), 2u);
  ASSERT_EQ(s.failures.size(), 1u);
  EXPECT_EQ(s.failures[0].seed, 1u);
  EXPECT_EQ(s.failures[0].message, "boom");
  EXPECT_THROW(multi_run([](std::uint64_t) -> RunResult { throw Error("x"); }, seeds), Error);
}

TEST(Seeds, TenAtEightFiveOtherwise) {
  EXPECT_EQ(default_seeds(8).size(), 10u);
  EXPECT_EQ(default_seeds(32, 100), (std::vector<std::uint64_t>{100, 101, 102, 103, 104}));
  EXPECT_EQ(default_sweep_sizes(773), (std::vector<std::size_t>{8, 16, 32, 64, 128, 773}));
  EXPECT_EQ(default_sweep_sizes(40), (std::vector<std::size_t>{8, 16, 32, 40}));
}

TEST(Negation, CaseStudyCases) {
  const auto c = case_study_corpus();
  const auto lex = default_lexicon(c.categories());
  const auto excluded = default_negation_exclusions();
  EXPECT_EQ(excluded, (std::vector<std::string>{"Cyst", "Post-Treatment", "Steatosis", "Hemangioma"}));
  const auto cases = extract_negation_cases(c, lex, excluded);
  ASSERT_EQ(cases.size(), 3u);
  EXPECT_EQ(cases[0].report_id, "report1");
  EXPECT_EQ(cases[0].category, *c.find_category("HCC"));
  EXPECT_EQ(cases[1].form, "cirrhosis");
  EXPECT_EQ(cases[2].category, *c.find_category("Metastasis"));

  const auto lm = negation_accuracy([&](const Report& r) { return label_match(r.text, lex); },
                                    cases, c);
  EXPECT_EQ(lm.overall(), 0.0);
  const auto cues = default_negation_cues();
  const auto nc = negation_accuracy(
      [&](const Report& r) { return negation_cue_label(r.text, lex, cues); }, cases, c);
  EXPECT_EQ(nc.overall(), 1.0);
  EXPECT_EQ(negation_csv(c.categories(), {{"Label Match", lm}, {"Negation Cue", nc}}),
            "category,cases,Label Match,Negation Cue\nHCC,1,0,1\nCirrhosis,1,0,1\n"
            "Metastasis,1,0,1\nAll,3,0,1\n");

  std::vector<NegationCase> dangling{{"nope", 0, "cyst", 0}};
  EXPECT_THROW(negation_accuracy([](const Report& r) { return r.gold; }, dangling, c), Error);
}

TEST(SizeSweep, SamplesEachSizeAndSeed) {
  const Corpus pool = testing::reference_pool(4);
  const std::vector<std::size_t> ks{8, 32};
  std::vector<std::pair<std::size_t, std::uint64_t>> calls;
  const auto points = size_sweep(
      [&](const Corpus& train_set, std::uint64_t seed) {
        calls.emplace_back(train_set.size(), seed);
        RunResult r;
        r.seed = seed;
        r.f1.macro = static_cast<double>(train_set.size());
        r.f1.per_category.assign(pool.category_count(), 0.0);
        return r;
      },
      ks, pool);
  ASSERT_EQ(points.size(), 2u);
  EXPECT_EQ(points[0].summary.runs.size(), 10u);
  EXPECT_EQ(points[1].summary.runs.size(), 5u);
  EXPECT_EQ(points[1].summary.macro.mean, 32.0);
  EXPECT_EQ(points[0].summary.runs[0].config_id, "k=8");
  EXPECT_EQ(calls.size(), 15u);
  const auto csv = sweep_csv(points);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "k,full,runs,failures,macro_mean,macro_std,micro_mean,micro_std");
}

}  // namespace
}  // namespace radlabel
