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

#include "radlabel/verbalizer.h"

#include <algorithm>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "radlabel/error.h"
#include "test_support.h"

namespace radlabel {
namespace {

TEST(Verbalizer, ShippedFileMatchesBuiltIn) {
  const auto path = testing::data_dir() / "liver_ct_verbalizer.json";
  for (auto mode : {VerbalizerMode::kSingle, VerbalizerMode::kMulti}) {
    const auto cats = liver_ct_categories();
    const auto file = align(load_verbalizer(path, mode), cats);
    const auto built = align(liver_ct_verbalizer(mode), cats);
    for (std::size_t i = 0; i < cats.size(); ++i) {
      EXPECT_EQ(file.entries[i].words, built.entries[i].words) << cats[i].name;
    }
  }
}

TEST(Verbalizer, SingleModeKeepsPrimaryWord) {
  const auto v = liver_ct_verbalizer(VerbalizerMode::kSingle);
  for (const auto& e : v.entries) EXPECT_EQ(e.words.size(), 1u);
  const auto m = align(liver_ct_verbalizer(VerbalizerMode::kMulti), liver_ct_categories());
  EXPECT_EQ(m.entries[1].words, (std::vector<std::string>{"hcc", "hepatoma"}));
  EXPECT_EQ(m.entries[4].words, (std::vector<std::string>{"steatosis", "steatohepatitis"}));
}

TEST(Verbalizer, RejectsBadWords) {
  const auto doc = [](nlohmann::json words) {
    return nlohmann::json{{"categories", {{{"name", "Cyst"}, {"words", words}}}}};
  };
  EXPECT_THROW(verbalizer_from_json(doc(nlohmann::json::array()), VerbalizerMode::kMulti),
               SpecError);
  EXPECT_THROW(verbalizer_from_json(doc({"fatty liver"}), VerbalizerMode::kMulti), SpecError);
  EXPECT_THROW(verbalizer_from_json(doc({"cyst", "cyst"}), VerbalizerMode::kMulti), SpecError);
  EXPECT_THROW(verbalizer_from_json(doc({""}), VerbalizerMode::kMulti), SpecError);
}

TEST(Verbalizer, AlignFollowsLabelSpace) {
  const auto cats = liver_ct_categories();
  const auto v = align(liver_ct_verbalizer(VerbalizerMode::kMulti), cats);
  ASSERT_EQ(v.entries.size(), cats.size());
  for (std::size_t i = 0; i < cats.size(); ++i) EXPECT_TRUE(cats[i].matches(v.entries[i].category));
  Verbalizer missing = v;
  missing.entries.pop_back();
  EXPECT_THROW(align(missing, cats), SpecError);
}

TEST(MappingMatrix, PadsAndMasks) {
  const auto v = align(liver_ct_verbalizer(VerbalizerMode::kMulti), liver_ct_categories());
  const std::vector<std::string> no_texts;
  const auto words = v.all_words();
  const Vocabulary vocab = Vocabulary::build(no_texts, words);
  const MappingMatrix m = build_matrix(v, vocab);
  EXPECT_EQ(m.rows, 7u);
  EXPECT_EQ(m.cols, 2u);
  EXPECT_EQ(m.row_size(1), 2u);
  EXPECT_EQ(m.row_size(0), 1u);
  EXPECT_FALSE(m.is_valid(0, 1));
  EXPECT_EQ(m.distinct_ids().size(), 9u);
  Vocabulary small;
  small.add("cyst");
  EXPECT_THROW(build_matrix(v, small), Error);
}

// Brute-force maximum over the valid cells of each row.
std::vector<double> brute_max(const std::vector<double>& logits, const MappingMatrix& m) {
  std::vector<double> out;
  for (std::size_t i = 0; i < m.rows; ++i) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (m.valid[i * m.cols + j]) best = std::max(best, logits[m.token_ids[i * m.cols + j]]);
    }
    out.push_back(best);
  }
  return out;
}

TEST(CategoryScores, MatchesBruteForceMax) {
  std::mt19937_64 rng(42);
  for (int draw = 0; draw < 200; ++draw) {
    const std::size_t vocab = 5 + rng() % 40, rows = 1 + rng() % 8, cols = 1 + rng() % 4;
    MappingMatrix m;
    m.rows = rows;
    m.cols = cols;
    for (std::size_t i = 0; i < rows; ++i) {
      const std::size_t valid = 1 + rng() % cols;
      for (std::size_t j = 0; j < cols; ++j) {
        m.token_ids.push_back(j < valid ? static_cast<TokenId>(rng() % vocab) : 0);
        m.valid.push_back(j < valid ? 1 : 0);
      }
    }
    std::normal_distribution<double> normal(0.0, 3.0);
    std::vector<double> logits(vocab);
    for (auto& x : logits) x = normal(rng);
    // Padded cells point at id 0; make it dominate so a leak would show.
    logits[0] = 1e9;
    EXPECT_EQ(category_scores(logits, m), brute_max(logits, m));
    const auto arg = category_argmax(logits, m);
    const auto best = brute_max(logits, m);
    for (std::size_t i = 0; i < rows; ++i) {
      EXPECT_TRUE(m.is_valid(i, arg[i]));
      EXPECT_EQ(logits[m.id(i, arg[i])], best[i]);
    }
  }
}

}  // namespace
}  // namespace radlabel
