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

#include "radlabel/text.h"

#include <algorithm>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace radlabel {
namespace {

using Words = std::vector<std::string>;

TEST(SplitWords, SeparatesPunctuation) {
  EXPECT_EQ(split_words("R/O metastasis."), (Words{"r", "/", "o", "metastasis", "."}));
  EXPECT_EQ(split_words("  S7/8>  Patency "), (Words{"s7", "/", "8", ">", "patency"}));
  EXPECT_TRUE(split_words("   ").empty());
}

TEST(SplitWords, KeepsNonAsciiInsideWords) {
  EXPECT_EQ(split_words("caf\xc3\xa9 x"), (Words{"caf\xc3\xa9", "x"}));
}

TEST(FindBounded, RespectsWordEdges) {
  EXPECT_TRUE(find_bounded("Cystic change.", "cyst").empty());
  EXPECT_EQ(find_bounded("Cystic change; a CYST.", "cyst"), (std::vector<std::size_t>{17}));
  EXPECT_EQ(find_bounded("r/o x and R/O y", "r/o"), (std::vector<std::size_t>{0, 10}));
  EXPECT_TRUE(find_bounded("anything", "").empty());
}

TEST(SplitSentences, KeepsDecimalPoints) {
  const std::string text = "Two 0.6-cm lesions. No HCC; fatty\nliver";
  const auto spans = split_sentences(text);
  ASSERT_EQ(spans.size(), 4u);
  EXPECT_EQ(text.substr(spans[0].begin, spans[0].end - spans[0].begin), "Two 0.6-cm lesions");
  EXPECT_EQ(text.substr(spans[1].begin, spans[1].end - spans[1].begin), " No HCC");
  EXPECT_EQ(text.substr(spans[3].begin, spans[3].end - spans[3].begin), "liver");
}

TEST(SurfaceVariants, AddsPlurals) {
  const auto m = surface_variants("Metastasis");
  EXPECT_NE(std::find(m.begin(), m.end(), "metastasis"), m.end());
  EXPECT_NE(std::find(m.begin(), m.end(), "metastases"), m.end());
  const auto c = surface_variants("hepatic cyst");
  EXPECT_NE(std::find(c.begin(), c.end(), "hepatic cysts"), c.end());
}

TEST(FindMentions, SortedByOffset) {
  const auto ms = find_mentions("Metastases and a cyst; metastasis.", {"cyst", "metastasis"});
  ASSERT_EQ(ms.size(), 3u);
  EXPECT_EQ(ms[0].offset, 0u);
  EXPECT_EQ(ms[0].form, "metastases");
  EXPECT_EQ(ms[1].form, "cyst");
  EXPECT_EQ(ms[2].form, "metastasis");
}

}  // namespace
}  // namespace radlabel
