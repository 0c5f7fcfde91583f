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

#ifndef RADLABEL_PRETRAINING_H_
#define RADLABEL_PRETRAINING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "radlabel/scorer.h"
#include "radlabel/templates.h"

namespace radlabel {

struct PretrainConfig {
  double learning_rate = 1e-2;
  std::size_t batch_size = 8;
  std::size_t epochs = 60;
  std::uint64_t seed = 0;
  double weight_decay = 0.01;
};

void validate(const PretrainConfig& config);

struct PretrainResult {
  std::vector<double> epoch_losses;
  std::size_t steps = 0;
};

// Self-supervised pass over unlabeled texts: text i is rendered with
// templates[i % n] and the mask is trained (softmax over the whole
// vocabulary) towards a uniform distribution over the distinct known words
// of the text. Punctuation and [UNK] are not targets; texts with no target
// are skipped.
PretrainResult pretrain_context_words(MaskedTokenScorer& scorer,
                                      std::span<const std::string> texts,
                                      std::span<const Template> templates,
                                      const PretrainConfig& config);

}  // namespace radlabel

#endif  // RADLABEL_PRETRAINING_H_
