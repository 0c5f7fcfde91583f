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

#include "radlabel/optimizer.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

namespace radlabel {
namespace {

// One AdamW step from zero moments moves each parameter by lr * sign(g)
// (bias correction makes m_hat = g, v_hat = g^2) after decoupled decay.
TEST(AdamW, FirstStep) {
  AdamW opt(3, AdamWConfig{0.9, 0.999, 1e-8, 0.01});
  std::vector<double> p{1.0, -2.0, 0.5};
  const std::vector<double> g{0.3, -4.0, 0.0};
  opt.step(p, g, 0.1);
  EXPECT_NEAR(p[0], 1.0 * (1 - 0.001) - 0.1 * 0.3 / (0.3 + 1e-8), 1e-12);
  EXPECT_NEAR(p[1], -2.0 * (1 - 0.001) + 0.1 * 4.0 / (4.0 + 1e-8), 1e-12);
  EXPECT_NEAR(p[2], 0.5 * (1 - 0.001), 1e-12);
  EXPECT_EQ(opt.steps(), 1u);
}

TEST(AdamW, SecondStepUsesBiasCorrectedMoments) {
  const double b1 = 0.9, b2 = 0.999, eps = 1e-8, lr = 0.05;
  AdamW opt(1, AdamWConfig{b1, b2, eps, 0.0});
  std::vector<double> p{0.0};
  opt.step(p, std::vector<double>{1.0}, lr);
  const double after_one = p[0];
  opt.step(p, std::vector<double>{-2.0}, lr);
  const double m = b1 * (1 - b1) * 1.0 + (1 - b1) * -2.0;
  const double v = b2 * (1 - b2) * 1.0 + (1 - b2) * 4.0;
  const double m_hat = m / (1 - b1 * b1), v_hat = v / (1 - b2 * b2);
  EXPECT_NEAR(p[0], after_one - lr * m_hat / (std::sqrt(v_hat) + eps), 1e-12);
}

TEST(AdamW, ZeroRateLeavesParameters) {
  AdamW opt(2, AdamWConfig{});
  std::vector<double> p{1.0, 2.0};
  opt.step(p, std::vector<double>{5.0, 5.0}, 0.0);
  EXPECT_EQ(p, (std::vector<double>{1.0, 2.0}));
}

}  // namespace
}  // namespace radlabel
