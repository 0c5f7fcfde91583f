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

#include "radlabel/pipeline.h"

#include <memory>

namespace radlabel {

Vocabulary training_vocabulary(const Corpus& train, const Verbalizer& verbalizer,
                               const Template& tmpl) {
  std::vector<std::string> texts;
  texts.reserve(train.size());
  for (const auto& r : train.reports()) texts.push_back(r.text);
  std::vector<std::string> extra = verbalizer.all_words();
  for (auto& w : tmpl.scaffold_words()) extra.push_back(std::move(w));
  return Vocabulary::build(texts, extra);
}

Vocabulary corpus_vocabulary(std::span<const std::string> texts, const Verbalizer& verbalizer,
                             std::span<const Template> templates) {
  std::vector<std::string> extra = verbalizer.all_words();
  for (const auto& t : templates) {
    for (auto& w : t.scaffold_words()) extra.push_back(std::move(w));
  }
  return Vocabulary::build(texts, extra);
}

PromptRadModel make_toy_model(const Corpus& train, const Verbalizer& verbalizer,
                              const Template& tmpl, const ToyMlmConfig& config, double tau) {
  Verbalizer aligned = align(verbalizer, train.categories());
  auto scorer = std::make_unique<ToyMlm>(training_vocabulary(train, aligned, tmpl), config);
  return PromptRadModel(std::move(scorer), tmpl, std::move(aligned), tau);
}

}  // namespace radlabel
