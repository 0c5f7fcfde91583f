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

#ifndef RADLABEL_PIPELINE_H_
#define RADLABEL_PIPELINE_H_

#include <cstdint>
#include <span>
#include <string>

#include "radlabel/corpus.h"
#include "radlabel/labeler.h"
#include "radlabel/templates.h"
#include "radlabel/toy_mlm.h"
#include "radlabel/verbalizer.h"

namespace radlabel {

// Vocabulary of the training texts plus every verbalizer and template word.
Vocabulary training_vocabulary(const Corpus& train, const Verbalizer& verbalizer,
                               const Template& tmpl);

// Vocabulary of unlabeled texts plus every verbalizer and template word.
Vocabulary corpus_vocabulary(std::span<const std::string> texts, const Verbalizer& verbalizer,
                             std::span<const Template> templates);

// Fresh toy-scorer model for `train`. The verbalizer is aligned to the
// corpus label space here.
PromptRadModel make_toy_model(const Corpus& train, const Verbalizer& verbalizer,
                              const Template& tmpl, const ToyMlmConfig& config, double tau = 0.5);

}  // namespace radlabel

#endif  // RADLABEL_PIPELINE_H_
