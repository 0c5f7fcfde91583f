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

#include "radlabel/templates.h"

#include <string>

#include <gtest/gtest.h>

#include "radlabel/error.h"
#include "radlabel/vocabulary.h"
#include "test_support.h"

namespace radlabel {
namespace {

Vocabulary vocab_for(const std::vector<std::string>& texts) {
  const std::vector<std::string> none;
  return Vocabulary::build(texts, none);
}

TEST(Template, Patterns) {
  EXPECT_EQ(manual_template().pattern(), "[REPORT] The radiology report is related to [MASK] .");
  EXPECT_EQ(reference_auto_templates()[0].pattern(), "Hepatic [MASK] : [REPORT]");
  EXPECT_EQ(reference_auto_templates()[2].pattern(), "[REPORT] Hepatic [MASK] .");
  EXPECT_EQ(manual_liver_template().scaffold_words(),
            (std::vector<std::string>{"the", "liver", "radiology", "report", "is", "related", "to",
                                      "."}));
}

TEST(Template, ShippedFilesMatchBuiltIns) {
  const auto dir = testing::data_dir() / "templates";
  EXPECT_EQ(load_template(dir / "manual.json").pattern(), manual_template().pattern());
  EXPECT_EQ(load_template(dir / "manual_liver.json").pattern(), manual_liver_template().pattern());
  const auto autos = reference_auto_templates();
  for (std::size_t i = 0; i < autos.size(); ++i) {
    const auto t = load_template(dir / ("autot" + std::to_string(i + 1) + ".json"));
    EXPECT_EQ(t.pattern(), autos[i].pattern());
    EXPECT_EQ(t.id, autos[i].id);
  }
}

TEST(Template, RejectsPlaceholdersInScaffold) {
  Template t = manual_template();
  t.prefix = "Report {report} is";
  EXPECT_THROW(validate(t), SpecError);
  t.prefix = "Answer [MASK]";
  EXPECT_THROW(validate(t), SpecError);
}

TEST(Render, ReportFirstLayout) {
  const Template t = manual_template();
  const Vocabulary v = vocab_for({"Fatty liver.", t.prefix, t.suffix});
  const auto enc = render(t, "Fatty liver.", v, 64);
  EXPECT_EQ(detokenize(enc.tokens, v),
            "[CLS] fatty liver . the radiology report is related to [MASK] . [SEP]");
  EXPECT_EQ(enc.mask_pos, 10u);
  EXPECT_EQ(enc.report_tokens, 3u);
  EXPECT_FALSE(enc.truncated);
}

TEST(Render, AnswerFirstLayout) {
  const Template t = reference_auto_templates()[4];
  const Vocabulary v = vocab_for({"HCC in S8.", t.prefix, t.infix});
  const auto enc = render(t, "HCC in S8.", v, 64);
  EXPECT_EQ(detokenize(enc.tokens, v), "[CLS] liver [MASK] in hcc in s8 . [SEP]");
  EXPECT_EQ(enc.mask_pos, 2u);
}

TEST(Render, TruncatesReportOnly) {
  const Template t = manual_template();
  const Vocabulary v = vocab_for({"a b c d e f g h", t.prefix, t.suffix});
  const auto enc = render(t, "a b c d e f g h", v, 13);
  EXPECT_TRUE(enc.truncated);
  EXPECT_EQ(enc.tokens.size(), 13u);
  EXPECT_EQ(detokenize(enc.tokens, v),
            "[CLS] a b c the radiology report is related to [MASK] . [SEP]");
  EXPECT_THROW(render(t, "a", v, 9), Error);
}

TEST(Template, JsonRoundTrip) {
  const Template t = reference_auto_templates()[3];
  EXPECT_EQ(template_to_json(template_from_json(template_to_json(t))).dump(),
            template_to_json(t).dump());
}

}  // namespace
}  // namespace radlabel
