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

#include "radlabel/llm.h"

#include <random>
#include <string>

#include <gtest/gtest.h>

#include "radlabel/error.h"
#include "radlabel/io.h"
#include "test_support.h"

namespace radlabel {
namespace {

const auto kCats = liver_ct_categories();

LabelVector labels(std::initializer_list<std::size_t> on) {
  LabelVector v(kCats.size(), 0);
  for (auto i : on) v[i] = 1;
  return v;
}

TEST(LlmRequest, Legend) {
  EXPECT_EQ(category_legend(kCats),
            "{'cyst': 0, 'HCC': 1, 'post-treatment': 2, 'cirrhosis': 3, 'steatosis': 4, "
            "'metastasis': 5, 'hemangioma': 6}");
}

TEST(LlmRequest, ZeroShotMessages) {
  const auto c = testing::case_study_corpus();
  const auto ex = build_llm_request(c.reports()[2], kCats);
  EXPECT_EQ(ex.system,
            "You are a professional radiologist who knows computed tomography (CT) very much. You "
            "can classify the CT report for the liver features or symptoms.");
  EXPECT_EQ(ex.user,
            "Now you are going to perform a multi-label classification for a text report of liver "
            "computed tomography (CT). Given the potential categorized features {'cyst': 0, "
            "'HCC': 1, 'post-treatment': 2, 'cirrhosis': 3, 'steatosis': 4, 'metastasis': 5, "
            "'hemangioma': 6}, please read the following liver computed tomography report of a "
            "patient. If the report is positive with a feature, please return the corresponding "
            "value. Liver computed tomography: " +
                c.reports()[2].text);
}

TEST(LlmRequest, InContextExamples) {
  const auto c = testing::case_study_corpus();
  IclOptions icl{&c, 2, 7};
  const auto ex = build_llm_request(c.reports()[0], kCats, &icl);
  EXPECT_EQ(ex.user.rfind("Here are labeled examples.\n\n", 0), 0u);
  EXPECT_EQ(ex.user.find(c.reports()[0].text), ex.user.size() - c.reports()[0].text.size());
  EXPECT_NE(ex.user.find(c.reports()[1].text), std::string::npos);
  EXPECT_NE(ex.user.find(c.reports()[2].text), std::string::npos);
  EXPECT_NE(ex.user.find("Answer:\n4. Steatosis\n"), std::string::npos);
  EXPECT_EQ(build_llm_request(c.reports()[0], kCats, &icl).user, ex.user);
}

TEST(LlmParse, ExampleResponse) {
  EXPECT_EQ(parse_llm_response("1. HCC (Hepatocellular carcinoma)\n3. Cirrhosis", kCats),
            labels({1, 3}));
}

TEST(LlmParse, Formats) {
  EXPECT_EQ(parse_llm_response("[1, 3]", kCats), labels({1, 3}));
  EXPECT_EQ(parse_llm_response("0\n6", kCats), labels({0, 6}));
  EXPECT_EQ(parse_llm_response("The report mentions steatosis.", kCats), labels({4}));
  EXPECT_EQ(parse_llm_response("None", kCats), labels({}));
  EXPECT_EQ(parse_llm_response("", kCats), labels({}));
  const auto d = parse_llm_response_detailed("9. Gallstones\n12345678901234567890", kCats);
  EXPECT_EQ(d.labels, labels({}));
  EXPECT_EQ(d.notes.size(), 2u);
}

TEST(LlmParse, TotalOnRandomBytes) {
  std::mt19937_64 rng(3);
  const std::string alphabet = "0123456789.,;:()[]{} \n\t-HCCcystNone\xff\x80";
  for (int i = 0; i < 2000; ++i) {
    std::string s(rng() % 80, ' ');
    for (auto& ch : s) ch = alphabet[rng() % alphabet.size()];
    LabelVector v;
    EXPECT_NO_THROW(v = parse_llm_response(s, kCats));
    EXPECT_EQ(v.size(), kCats.size());
  }
}

TEST(FixtureTransport, ReplaysByRequestKey) {
  const auto c = testing::case_study_corpus();
  const auto ex = build_llm_request(c.reports()[0], kCats);
  testing::TempDir dir;
  nlohmann::ordered_json doc;
  doc[request_key(ex.system, ex.user)] = "0. cyst\n3. cirrhosis";
  write_json_file(dir / "fixture.json", doc);
  auto t = FixtureTransport::load(dir / "fixture.json");
  const auto out = run_llm_labeler(t, c.reports()[0], kCats);
  EXPECT_EQ(out.labels, labels({0, 3}));
  EXPECT_EQ(out.response, "0. cyst\n3. cirrhosis");
  EXPECT_THROW(run_llm_labeler(t, c.reports()[1], kCats), Error);
  EXPECT_EQ(request_key("a", "b"), sha256_hex("a\nb"));
}

TEST(CallbackTransport, PassesMessages) {
  const auto c = testing::case_study_corpus();
  CallbackTransport t([](const std::string& system, const std::string& user) {
    EXPECT_FALSE(system.empty());
    return user.find("fatty") != std::string::npos ? std::string("4") : std::string("None");
  });
  EXPECT_EQ(run_llm_labeler(t, c.reports()[2], kCats).labels, labels({4}));
}

}  // namespace
}  // namespace radlabel
