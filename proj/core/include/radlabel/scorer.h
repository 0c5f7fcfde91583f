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

#ifndef RADLABEL_SCORER_H_
#define RADLABEL_SCORER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radlabel/vocabulary.h"

namespace radlabel {

// A trainable masked language model head: vocabulary logits at the [MASK]
// position of a token sequence. Parameters are exposed as one flat buffer
// so optimizers, checkpoints and gradient checks stay model-agnostic.
//
// forward()/forward_ids() are safe under concurrent reads of frozen
// parameters; training needs exclusive ownership of the instance.
class MaskedTokenScorer {
 public:
  virtual ~MaskedTokenScorer() = default;

  virtual std::string kind() const = 0;
  virtual const Vocabulary& vocab() const = 0;
  // Longest token sequence forward() accepts.
  virtual std::size_t max_length() const = 0;

  // Logits over the whole vocabulary. Throws Error when mask_pos is out of
  // range or tokens[mask_pos] is not [MASK].
  virtual std::vector<double> forward(std::span<const TokenId> tokens,
                                      std::size_t mask_pos) const = 0;

  // Logits of `ids` only; must agree exactly with gathering from forward().
  virtual std::vector<double> forward_ids(std::span<const TokenId> tokens,
                                          std::size_t mask_pos,
                                          std::span<const TokenId> ids) const;

  // Accumulates dLoss/dParameters into `grad` given dLoss/dlogit(ids[k]) =
  // dlogits[k].
  virtual void backward(std::span<const TokenId> tokens, std::size_t mask_pos,
                        std::span<const TokenId> ids,
                        std::span<const double> dlogits,
                        std::span<double> grad) const = 0;

  virtual std::span<double> parameters() = 0;
  virtual std::span<const double> parameters() const = 0;

  virtual std::unique_ptr<MaskedTokenScorer> clone() const = 0;

  // Self-describing document: kind, config, vocabulary and parameters.
  virtual nlohmann::ordered_json checkpoint() const = 0;
};

// Throws Error unless 0 < tokens.size() <= max_len, every id is in
// vocabulary range, and tokens[mask_pos] is [MASK].
void check_scoring_input(std::span<const TokenId> tokens, std::size_t mask_pos,
                         std::size_t vocab_size, std::size_t max_len);

// Writes checkpoint() atomically; parameters round-trip exactly.
void save_scorer(const std::filesystem::path& path, const MaskedTokenScorer& scorer);
std::unique_ptr<MaskedTokenScorer> scorer_from_checkpoint(const nlohmann::json& doc);
std::unique_ptr<MaskedTokenScorer> load_scorer(const std::filesystem::path& path);

// Loss over the logits of a fixed id list. Returns the loss and writes
// dLoss/dlogit into `grad` (same length as `logits`).
using LogitLoss =
    std::function<double(std::span<const double> logits, std::span<double> grad)>;

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::size_t coordinates = 0;
  std::size_t worst_coordinate = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
};

// Compares analytic parameter gradients of loss(forward_ids(...)) with
// central finite differences at `step`. Checks `coordinates` parameters
// drawn (seeded) from those with a nonzero analytic gradient, plus a quarter
// as many drawn from all parameters. Relative error is
// |a - n| / max(|a|, |n|, 1e-6). Parameters are restored afterwards.
// Throws Error on a non-finite gradient.
GradCheckResult grad_check(MaskedTokenScorer& scorer, const LogitLoss& loss,
                           std::span<const TokenId> tokens, std::size_t mask_pos,
                           std::span<const TokenId> ids, std::size_t coordinates,
                           std::uint64_t seed, double step = 1e-5);

}  // namespace radlabel

#endif  // RADLABEL_SCORER_H_
