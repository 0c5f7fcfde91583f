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

#include "radlabel/scorer.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "radlabel/error.h"
#include "radlabel/io.h"
#include "radlabel/toy_mlm.h"

namespace radlabel {

std::vector<double> MaskedTokenScorer::forward_ids(std::span<const TokenId> tokens,
                                                   std::size_t mask_pos,
                                                   std::span<const TokenId> ids) const {
  const auto all = forward(tokens, mask_pos);
  std::vector<double> out;
  out.reserve(ids.size());
  for (TokenId id : ids) out.push_back(all.at(static_cast<std::size_t>(id)));
  return out;
}

void check_scoring_input(std::span<const TokenId> tokens, std::size_t mask_pos,
                         std::size_t vocab_size, std::size_t max_len) {
  if (tokens.empty()) throw Error("empty token sequence");
  if (tokens.size() > max_len) {
    throw Error("sequence of " + std::to_string(tokens.size()) +
                " tokens exceeds max length " + std::to_string(max_len));
  }
  if (mask_pos >= tokens.size()) {
    throw Error("mask position " + std::to_string(mask_pos) + " out of range");
  }
  if (tokens[mask_pos] != Vocabulary::kMask) {
    throw Error("token at mask position " + std::to_string(mask_pos) + " is not [MASK]");
  }
  for (TokenId id : tokens) {
    if (id < 0 || static_cast<std::size_t>(id) >= vocab_size) {
      throw Error("token id " + std::to_string(id) + " outside vocabulary");
    }
  }
}

void save_scorer(const std::filesystem::path& path, const MaskedTokenScorer& scorer) {
  write_file_atomic(path, scorer.checkpoint().dump() + "\n");
}

std::unique_ptr<MaskedTokenScorer> scorer_from_checkpoint(const nlohmann::json& doc) {
  const std::string kind = doc.value("kind", std::string());
  if (kind != "toy_mlm") throw Error("unsupported scorer kind '" + kind + "'");
  const auto& c = doc.at("config");
  ToyMlmConfig config;
  config.dim = c.at("dim").get<std::size_t>();
  config.max_len = c.at("max_len").get<std::size_t>();
  config.local_span = c.at("local_span").get<std::size_t>();
  config.init_scale = c.at("init_scale").get<double>();
  config.seed = c.at("seed").get<std::uint64_t>();
  auto vocab = Vocabulary::from_tokens(doc.at("vocab").get<std::vector<std::string>>());
  auto params = doc.at("parameters").get<std::vector<double>>();
  return std::make_unique<ToyMlm>(std::move(vocab), config, std::move(params));
}

std::unique_ptr<MaskedTokenScorer> load_scorer(const std::filesystem::path& path) {
  try {
    return scorer_from_checkpoint(read_json_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string(), 0, std::string("bad scorer checkpoint: ") + e.what());
  }
}

GradCheckResult grad_check(MaskedTokenScorer& scorer, const LogitLoss& loss,
                           std::span<const TokenId> tokens, std::size_t mask_pos,
                           std::span<const TokenId> ids, std::size_t coordinates,
                           std::uint64_t seed, double step) {
  auto params = scorer.parameters();
  std::vector<double> analytic(params.size(), 0.0);
  {
    const auto logits = scorer.forward_ids(tokens, mask_pos, ids);
    std::vector<double> dlogits(logits.size(), 0.0);
    loss(logits, dlogits);
    scorer.backward(tokens, mask_pos, ids, dlogits, analytic);
  }
  for (double g : analytic) {
    if (!std::isfinite(g)) throw Error("non-finite analytic gradient");
  }

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    if (analytic[i] != 0.0) active.push_back(i);
  }
  std::shuffle(active.begin(), active.end(), rng);
  active.resize(std::min(active.size(), coordinates));
  std::uniform_int_distribution<std::size_t> any(0, params.size() - 1);
  for (std::size_t k = 0; k < std::max<std::size_t>(1, coordinates / 4); ++k) {
    active.push_back(any(rng));
  }

  auto eval = [&]() {
    const auto logits = scorer.forward_ids(tokens, mask_pos, ids);
    std::vector<double> scratch(logits.size(), 0.0);
    return loss(logits, scratch);
  };

  GradCheckResult result;
  result.coordinates = active.size();
  for (std::size_t i : active) {
    const double saved = params[i];
    params[i] = saved + step;
    const double up = eval();
    params[i] = saved - step;
    const double down = eval();
    params[i] = saved;
    const double numeric = (up - down) / (2.0 * step);
    const double a = analytic[i];
    const double rel =
        std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), 1e-6});
    if (rel > result.max_relative_error || result.coordinates == 0) {
      result.max_relative_error = rel;
      result.worst_coordinate = i;
      result.worst_analytic = a;
      result.worst_numeric = numeric;
    }
  }
  return result;
}

}  // namespace radlabel
