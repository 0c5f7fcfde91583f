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

#include "radlabel/error.h"

namespace radlabel {

AdamW::AdamW(std::size_t parameter_count, AdamWConfig config)
    : config_(config), m_(parameter_count, 0.0), v_(parameter_count, 0.0) {
  if (config_.beta1 < 0.0 || config_.beta1 >= 1.0) throw SpecError("beta1", "must be in [0,1)");
  if (config_.beta2 < 0.0 || config_.beta2 >= 1.0) throw SpecError("beta2", "must be in [0,1)");
  if (config_.eps <= 0.0) throw SpecError("eps", "must be > 0");
  if (config_.weight_decay < 0.0) throw SpecError("weight_decay", "must be >= 0");
}

void AdamW::step(std::span<double> params, std::span<const double> grad, double lr) {
  if (params.size() != m_.size() || grad.size() != m_.size()) {
    throw Error("optimizer buffer size mismatch");
  }
  ++t_;
  const double b1 = config_.beta1, b2 = config_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(t_));
  if (lr == 0.0) {
    for (std::size_t i = 0; i < m_.size(); ++i) {
      m_[i] = b1 * m_[i] + (1.0 - b1) * grad[i];
      v_[i] = b2 * v_[i] + (1.0 - b2) * grad[i] * grad[i];
    }
    return;
  }
  const double decay = 1.0 - lr * config_.weight_decay;
  for (std::size_t i = 0; i < m_.size(); ++i) {
    const double g = grad[i];
    m_[i] = b1 * m_[i] + (1.0 - b1) * g;
    v_[i] = b2 * v_[i] + (1.0 - b2) * g * g;
    const double mhat = m_[i] / c1;
    const double vhat = v_[i] / c2;
    params[i] = params[i] * decay - lr * mhat / (std::sqrt(vhat) + config_.eps);
  }
}

}  // namespace radlabel
