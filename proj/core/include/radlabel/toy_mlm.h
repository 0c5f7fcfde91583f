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

#ifndef RADLABEL_TOY_MLM_H_
#define RADLABEL_TOY_MLM_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "radlabel/scorer.h"

namespace radlabel {

struct ToyMlmConfig {
  std::size_t dim = 32;
  std::size_t max_len = 160;
  // Preceding tokens mixed into each position's key/value input.
  std::size_t local_span = 4;
  // Uniform init half-width; 0 means 1/sqrt(dim).
  double init_scale = 0.0;
  std::uint64_t seed = 0;
};

void validate(const ToyMlmConfig& config);

// Desk-scale reference scorer: one single-head self-attention layer read at
// the mask position, with the output projection tied to the token
// embeddings.
//
//   x_t = E[tok_t] + P[t]
//   u_t = x_t + sum_{j=1..span} C_j E[tok_{t-j}]
//   a   = softmax_t((Wq x_m) . (Wk u_t) / sqrt(dim))
//   h   = x_m + Wo sum_t a_t Wv u_t
//   logit(w) = E[w] . h + b[w]
//
// Parameter layout in the flat buffer: E, P, C_1..C_span, Wq, Wk, Wv, Wo, b.
class ToyMlm final : public MaskedTokenScorer {
 public:
  ToyMlm(Vocabulary vocab, ToyMlmConfig config);
  // Restores a checkpoint; `parameters` must have parameter_count() entries.
  ToyMlm(Vocabulary vocab, ToyMlmConfig config, std::vector<double> parameters);

  std::string kind() const override { return "toy_mlm"; }
  const Vocabulary& vocab() const override { return vocab_; }
  std::size_t max_length() const override { return config_.max_len; }
  const ToyMlmConfig& config() const { return config_; }

  std::vector<double> forward(std::span<const TokenId> tokens,
                              std::size_t mask_pos) const override;
  std::vector<double> forward_ids(std::span<const TokenId> tokens, std::size_t mask_pos,
                                  std::span<const TokenId> ids) const override;
  void backward(std::span<const TokenId> tokens, std::size_t mask_pos,
                std::span<const TokenId> ids, std::span<const double> dlogits,
                std::span<double> grad) const override;

  std::span<double> parameters() override { return params_; }
  std::span<const double> parameters() const override { return params_; }
  std::unique_ptr<MaskedTokenScorer> clone() const override;
  nlohmann::ordered_json checkpoint() const override;

  static std::size_t parameter_count(std::size_t vocab_size, const ToyMlmConfig& config);

  // Offset of embedding row `id` in the flat buffer.
  std::size_t embedding_offset(TokenId id) const;

 private:
  struct Layout;
  struct Activations;

  Layout layout() const;
  Activations run(std::span<const TokenId> tokens, std::size_t mask_pos) const;

  Vocabulary vocab_;
  ToyMlmConfig config_;
  std::vector<double> params_;
};

}  // namespace radlabel

#endif  // RADLABEL_TOY_MLM_H_
