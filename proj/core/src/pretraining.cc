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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "radlabel/error.h"
#include "radlabel/optimizer.h"
#include "radlabel/text.h"

namespace radlabel {

void validate(const PretrainConfig& config) {
  if (!(config.learning_rate >= 0.0) || !std::isfinite(config.learning_rate)) {
    throw SpecError("pretrain_learning_rate", "must be a finite value >= 0");
  }
  if (config.batch_size < 1) throw SpecError("pretrain_batch_size", "must be >= 1");
  if (!(config.weight_decay >= 0.0)) throw SpecError("pretrain_weight_decay", "must be >= 0");
}

PretrainResult pretrain_context_words(MaskedTokenScorer& scorer,
                                      std::span<const std::string> texts,
                                      std::span<const Template> templates,
                                      const PretrainConfig& config) {
  validate(config);
  if (templates.empty()) throw Error("pretraining needs at least one template");
  const Vocabulary& vocab = scorer.vocab();
  struct Example {
    EncodedInput input;
    std::vector<TokenId> targets;
  };
  std::vector<Example> examples;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const std::string& text = texts[i];
    Example ex{render(templates[i % templates.size()], text, vocab, scorer.max_length()), {}};
    for (const auto& w : split_words(text)) {
      if (!is_word_char(w.front())) continue;
      const auto id = vocab.find(w);
      if (id) ex.targets.push_back(*id);
    }
    std::sort(ex.targets.begin(), ex.targets.end());
    ex.targets.erase(std::unique(ex.targets.begin(), ex.targets.end()), ex.targets.end());
    if (!ex.targets.empty()) examples.push_back(std::move(ex));
  }
  PretrainResult result;
  if (examples.empty() || config.epochs == 0) return result;

  std::vector<TokenId> all_ids(vocab.size());
  std::iota(all_ids.begin(), all_ids.end(), 0);
  auto params = scorer.parameters();
  AdamW optimizer(params.size(), AdamWConfig{0.9, 0.999, 1e-8, config.weight_decay});
  std::vector<double> grad(params.size());
  std::vector<double> dlogits(vocab.size());
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(config.seed);

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(start + config.batch_size, order.size());
      const double inv_batch = 1.0 / static_cast<double>(end - start);
      std::fill(grad.begin(), grad.end(), 0.0);
      for (std::size_t k = start; k < end; ++k) {
        const Example& ex = examples[order[k]];
        const auto logits = scorer.forward(ex.input.tokens, ex.input.mask_pos);
        const double top = *std::max_element(logits.begin(), logits.end());
        double z = 0.0;
        for (double l : logits) z += std::exp(l - top);
        const double log_z = top + std::log(z);
        const double w = 1.0 / static_cast<double>(ex.targets.size());
        double loss = 0.0;
        for (TokenId t : ex.targets) loss -= w * (logits[static_cast<std::size_t>(t)] - log_z);
        if (!std::isfinite(loss)) throw TrainingError(result.steps, "non-finite pretraining loss");
        epoch_sum += loss;
        for (std::size_t i = 0; i < logits.size(); ++i) {
          dlogits[i] = std::exp(logits[i] - log_z) * inv_batch;
        }
        for (TokenId t : ex.targets) dlogits[static_cast<std::size_t>(t)] -= w * inv_batch;
        scorer.backward(ex.input.tokens, ex.input.mask_pos, all_ids, dlogits, grad);
      }
      optimizer.step(params, grad, config.learning_rate);
      ++result.steps;
    }
    result.epoch_losses.push_back(epoch_sum / static_cast<double>(examples.size()));
  }
  return result;
}

}  // namespace radlabel
