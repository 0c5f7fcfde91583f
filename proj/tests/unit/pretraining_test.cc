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

#include "radlabel/pretraining.h"

#include <vector>

#include <gtest/gtest.h>

#include "radlabel/error.h"
#include "radlabel/io.h"
#include "radlabel/pipeline.h"
#include "radlabel/toy_mlm.h"
#include "test_support.h"

namespace radlabel {
namespace {

ToyMlm fresh(const std::vector<std::string>& texts, const std::vector<Template>& templates) {
  ToyMlmConfig cfg;
  cfg.dim = 8;
  cfg.max_len = 64;
  cfg.seed = 2;
  return ToyMlm(corpus_vocabulary(texts, liver_ct_verbalizer(VerbalizerMode::kMulti), templates),
                cfg);
}

TEST(Pretrain, LossFallsAndIsDeterministic) {
  std::vector<std::string> texts;
  const Corpus corpus = testing::case_study_corpus();
  for (const auto& r : corpus.reports()) texts.push_back(r.text);
  const std::vector<Template> templates{manual_template(), reference_auto_templates()[0]};
  PretrainConfig cfg;
  cfg.epochs = 15;
  cfg.batch_size = 2;
  ToyMlm a = fresh(texts, templates);
  const auto r = pretrain_context_words(a, texts, templates, cfg);
  ASSERT_EQ(r.epoch_losses.size(), 15u);
  EXPECT_EQ(r.steps, 30u);
  EXPECT_LT(r.epoch_losses.back(), r.epoch_losses.front());
  ToyMlm b = fresh(texts, templates);
  pretrain_context_words(b, texts, templates, cfg);
  EXPECT_EQ(sha256_hex(a.parameters()), sha256_hex(b.parameters()));
}

TEST(Pretrain, RaisesMaskProbabilityOfReportWords) {
  const std::vector<std::string> texts{"steatosis", "cirrhosis"};
  const std::vector<Template> templates{manual_template()};
  ToyMlm s = fresh(texts, templates);
  PretrainConfig cfg;
  cfg.epochs = 60;
  cfg.batch_size = 1;
  pretrain_context_words(s, texts, templates, cfg);
  for (const auto& text : texts) {
    const auto enc = render(templates[0], text, s.vocab(), 64);
    const auto logits = s.forward(enc.tokens, enc.mask_pos);
    const auto target = *s.vocab().find(text);
    const auto other = *s.vocab().find(text == "steatosis" ? "cirrhosis" : "steatosis");
    EXPECT_GT(logits[static_cast<std::size_t>(target)], logits[static_cast<std::size_t>(other)]);
  }
}

TEST(Pretrain, Validation) {
  PretrainConfig cfg;
  cfg.batch_size = 0;
  EXPECT_THROW(validate(cfg), SpecError);
  cfg = PretrainConfig{};
  cfg.learning_rate = -1;
  EXPECT_THROW(validate(cfg), SpecError);
  const std::vector<std::string> texts{"cyst"};
  ToyMlm s = fresh(texts, {manual_template()});
  const std::vector<Template> none;
  EXPECT_THROW(pretrain_context_words(s, texts, none, PretrainConfig{}), Error);
}

}  // namespace
}  // namespace radlabel
