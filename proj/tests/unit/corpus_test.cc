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

#include "radlabel/corpus.h"

#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "radlabel/error.h"
#include "test_support.h"

namespace radlabel {
namespace {

using testing::day;
using testing::liver_report;

const char* kSmall =
    R"({"categories": ["Cyst", {"name": "Hepatocellular Carcinoma", "short_name": "HCC"}]}
{"id": "a", "date": "2014-05-01", "text": "Hepatic cyst.", "labels": {"Cyst": 1, "Hepatocellular Carcinoma": 0}}
{"id": "b", "date": "2015-05-01", "text": "HCC in S8.", "labels": {"Cyst": 0, "HCC": 1}}
)";

TEST(ParseDate, StrictFormat) {
  EXPECT_EQ(format_date(parse_date("2014-12-31")), "2014-12-31");
  EXPECT_THROW(parse_date("2015-02-30"), Error);
  EXPECT_THROW(parse_date("2015-2-03"), Error);
  EXPECT_THROW(parse_date("2015-02-03x"), Error);
}

TEST(ParseCorpus, ReadsHeaderAndReports) {
  std::istringstream in(kSmall);
  const Corpus c = parse_corpus(in, "small");
  ASSERT_EQ(c.size(), 2u);
  ASSERT_EQ(c.category_count(), 2u);
  EXPECT_EQ(c.categories()[1].short_name, "HCC");
  EXPECT_EQ(c.find_category("hcc"), 1u);
  EXPECT_EQ(c.reports()[1].gold, (LabelVector{0, 1}));
  EXPECT_EQ(c.positive_counts(), (std::vector<std::size_t>{1, 1}));
  ASSERT_NE(c.find_report("b"), nullptr);
  EXPECT_EQ(c.find_report("zzz"), nullptr);
}

TEST(ParseCorpus, ErrorsCarryLineNumbers) {
  std::string text = kSmall;
  text += R"({"id": "c", "date": "2015-05-01", "text": "x", "labels": {"Cyst": 2, "HCC": 0}})";
  std::istringstream in(text);
  try {
    parse_corpus(in, "bad");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(ParseCorpus, RejectsUnknownCategoryAgainstLabelSpace) {
  std::istringstream in(R"({"categories": ["Cyst", "Gallstone"]})");
  const auto space = liver_ct_categories();
  EXPECT_THROW(parse_corpus(in, "h", &space), FormatError);
}

TEST(ParseCorpus, RejectsDuplicateIds) {
  std::string text = kSmall;
  text += R"({"id": "a", "date": "2015-05-01", "text": "x", "labels": {"Cyst": 1, "HCC": 0}})";
  std::istringstream in(text);
  EXPECT_THROW(parse_corpus(in, "dup"), FormatError);
}

TEST(Corpus, SerializeRoundTrips) {
  std::istringstream in(kSmall);
  const Corpus c = parse_corpus(in, "small");
  std::istringstream again(serialize_corpus(c));
  const Corpus d = parse_corpus(again, "again");
  EXPECT_EQ(serialize_corpus(d), serialize_corpus(c));
  EXPECT_EQ(d.categories()[1].name, "Hepatocellular Carcinoma");
}

TEST(Corpus, ConstructorValidates) {
  auto cats = liver_ct_categories();
  auto r = liver_report("x", "text", {"Cyst"});
  r.gold.pop_back();
  EXPECT_THROW(Corpus(cats, {r}), Error);
  auto empty = liver_report("y", "", {});
  EXPECT_THROW(Corpus(cats, {empty}), Error);
}

TEST(ChronologicalSplit, CutoffIsInclusive) {
  const Corpus c(liver_ct_categories(),
                 {liver_report("a", "one", {"Cyst"}, day(2014, 12, 31)),
                  liver_report("b", "two", {"Cyst"}, day(2015, 1, 1)),
                  liver_report("c", "three", {"HCC"}, day(2009, 3, 2))});
  const auto split = chronological_split(c, day(2014, 12, 31));
  EXPECT_EQ(split.train_pool.size(), 2u);
  ASSERT_EQ(split.test.size(), 1u);
  EXPECT_EQ(split.test.reports()[0].id, "b");
}

TEST(Corpus, SubsetKeepsOrder) {
  const auto c = testing::case_study_corpus();
  const std::vector<std::size_t> idx{2, 0};
  const Corpus s = c.subset(idx);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.reports()[0].id, "report3");
  EXPECT_EQ(s.reports()[1].id, "report1");
}

}  // namespace
}  // namespace radlabel
