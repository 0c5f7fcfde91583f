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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "radlabel/error.h"
#include "radlabel/io.h"
#include "radlabel/labeler.h"
#include "radlabel/toy_mlm.h"
#include "test_support.h"

namespace radlabel {
namespace {

ToyMlm make_scorer(std::uint64_t seed, std::size_t dim = 6, std::size_t span = 2) {
  const std::vector<std::string> texts{"no liver cirrhosis . mild fatty liver with hcc in s8 ."};
  const std::vector<std::string> extra{"cyst", "hepatoma"};
  ToyMlmConfig cfg;
  cfg.dim = dim;
  cfg.max_len = 32;
  cfg.local_span = span;
  cfg.seed = seed;
  return ToyMlm(Vocabulary::build(texts, extra), cfg);
}

std::vector<TokenId> masked_input(const ToyMlm& s, std::size_t& mask_pos) {
  auto tokens = s.vocab().tokenize("mild fatty liver with hcc in s8 . no liver cirrhosis");
  tokens.insert(tokens.begin(), Vocabulary::kCls);
  mask_pos = 4;
  tokens.insert(tokens.begin() + 4, Vocabulary::kMask);
  tokens.push_back(Vocabulary::kSep);
  return tokens;
}

TEST(ToyMlm, ParameterCount) {
  ToyMlmConfig cfg;
  cfg.dim = 4;
  cfg.max_len = 10;
  cfg.local_span = 3;
  // E 20x4, P 10x4, three 4x4 C_j, Wq/Wk/Wv/Wo 4x4, b 20.
  EXPECT_EQ(ToyMlm::parameter_count(20, cfg), 80u + 40u + 48u + 64u + 20u);
}

TEST(ToyMlm, ForwardIdsAgreesWithForward) {
  const ToyMlm s = make_scorer(3);
  std::size_t mask = 0;
  const auto tokens = masked_input(s, mask);
  const auto all = s.forward(tokens, mask);
  ASSERT_EQ(all.size(), s.vocab().size());
  const std::vector<TokenId> ids{7, 2, 9, 7};
  const auto some = s.forward_ids(tokens, mask, ids);
  for (std::size_t k = 0; k < ids.size(); ++k) EXPECT_EQ(some[k], all[static_cast<std::size_t>(ids[k])]);
}

TEST(ToyMlm, RejectsBadInputs) {
  const ToyMlm s = make_scorer(3);
  std::size_t mask = 0;
  const auto tokens = masked_input(s, mask);
  EXPECT_THROW(s.forward(tokens, mask + 1), Error);
  EXPECT_THROW(s.forward(tokens, tokens.size()), Error);
  auto bad = tokens;
  bad[0] = static_cast<TokenId>(s.vocab().size());
  EXPECT_THROW(s.forward(bad, mask), Error);
  std::vector<TokenId> long_input(40, Vocabulary::kMask);
  EXPECT_THROW(s.forward(long_input, 0), Error);
}

TEST(ToyMlm, CheckpointRoundTripsExactly) {
  const ToyMlm s = make_scorer(5);
  testing::TempDir dir;
  save_scorer(dir / "s.json", s);
  const auto loaded = load_scorer(dir / "s.json");
  EXPECT_EQ(loaded->kind(), "toy_mlm");
  EXPECT_EQ(sha256_hex(loaded->parameters()), sha256_hex(s.parameters()));
  std::size_t mask = 0;
  const auto tokens = masked_input(s, mask);
  EXPECT_EQ(loaded->forward(tokens, mask), s.forward(tokens, mask));
}

TEST(ToyMlm, CloneIsIndependent) {
  ToyMlm s = make_scorer(5);
  auto c = s.clone();
  c->parameters()[0] += 1.0;
  EXPECT_NE(c->parameters()[0], s.parameters()[0]);
}

TEST(ToyMlm, SeedControlsInit) {
  EXPECT_EQ(sha256_hex(make_scorer(1).parameters()), sha256_hex(make_scorer(1).parameters()));
  EXPECT_NE(sha256_hex(make_scorer(1).parameters()), sha256_hex(make_scorer(2).parameters()));
}

// Softmax cross-entropy over a few ids checks every parameter block,
// including those the mask reaches only through attention.
TEST(GradCheck, SoftmaxLossOverIds) {
  ToyMlm s = make_scorer(11);
  std::size_t mask = 0;
  const auto tokens = masked_input(s, mask);
  const std::vector<TokenId> ids{5, 6, 7, 8, 9, 10};
  const LogitLoss loss = [](std::span<const double> z, std::span<double> g) {
    double m = z[0];
    for (double v : z) m = std::max(m, v);
    double sum = 0.0;
    for (double v : z) sum += std::exp(v - m);
    for (std::size_t k = 0; k < z.size(); ++k) g[k] = std::exp(z[k] - m) / sum;
    g[2] -= 1.0;
    return -(z[2] - m - std::log(sum));
  };
  const auto r = grad_check(s, loss, tokens, mask, ids, 200, 1);
  EXPECT_GE(r.coordinates, 200u);
  EXPECT_LT(r.max_relative_error, 1e-4) << "coordinate " << r.worst_coordinate << " analytic "
                                        << r.worst_analytic << " numeric " << r.worst_numeric;
}

TEST(GradCheck, RestoresParameters) {
  ToyMlm s = make_scorer(11);
  const auto before = sha256_hex(s.parameters());
  std::size_t mask = 0;
  const auto tokens = masked_input(s, mask);
  const std::vector<TokenId> ids{5};
  grad_check(
      s, [](std::span<const double> z, std::span<double> g) { g[0] = 1.0; return z[0]; },
      tokens, mask, ids, 20, 2);
  EXPECT_EQ(sha256_hex(s.parameters()), before);
}

}  // namespace
}  // namespace radlabel
