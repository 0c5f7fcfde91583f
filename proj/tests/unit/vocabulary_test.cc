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

#include "radlabel/vocabulary.h"

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "radlabel/error.h"

namespace radlabel {
namespace {

TEST(Vocabulary, SpecialsComeFirst) {
  const Vocabulary v;
  ASSERT_EQ(v.size(), 5u);
  EXPECT_EQ(v.token(Vocabulary::kPad), "[PAD]");
  EXPECT_EQ(v.token(Vocabulary::kUnk), "[UNK]");
  EXPECT_EQ(v.token(Vocabulary::kCls), "[CLS]");
  EXPECT_EQ(v.token(Vocabulary::kSep), "[SEP]");
  EXPECT_EQ(v.token(Vocabulary::kMask), "[MASK]");
}

TEST(Vocabulary, BuildIsFirstSeenAndBijective) {
  const std::vector<std::string> texts{"Liver cyst.", "cyst in LIVER"};
  const std::vector<std::string> extra{"Hepatoma", "cyst"};
  const Vocabulary v = Vocabulary::build(texts, extra);
  EXPECT_EQ(v.tokens(), (std::vector<std::string>{"[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
                                                  "liver", "cyst", ".", "in", "hepatoma"}));
  for (std::size_t i = 0; i < v.size(); ++i) {
    EXPECT_EQ(v.find(v.tokens()[i]), static_cast<TokenId>(i));
  }
}

TEST(Vocabulary, TokenizeMapsUnknown) {
  Vocabulary v;
  const TokenId liver = v.add("liver");
  EXPECT_EQ(v.add("liver"), liver);
  EXPECT_EQ(v.tokenize("Liver spleen"), (std::vector<TokenId>{liver, Vocabulary::kUnk}));
  EXPECT_EQ(v.id_or_unk("kidney"), Vocabulary::kUnk);
}

TEST(Vocabulary, FromTokensValidates) {
  EXPECT_THROW(Vocabulary::from_tokens({"a", "b"}), Error);
  EXPECT_THROW(
      Vocabulary::from_tokens({"[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]", "x", "x"}), Error);
  const auto v = Vocabulary::from_tokens({"[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]", "x"});
  EXPECT_EQ(v.find("x"), 5);
}

}  // namespace
}  // namespace radlabel
