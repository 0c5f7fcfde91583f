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

#ifndef RADLABEL_OPTIMIZER_H_
#define RADLABEL_OPTIMIZER_H_

#include <cstddef>
#include <span>
#include <vector>

namespace radlabel {

struct AdamWConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.01;
};

// Adam moments with decoupled weight decay over a flat parameter buffer.
class AdamW {
 public:
  AdamW(std::size_t parameter_count, AdamWConfig config = {});

  // One update at learning rate `lr`. With lr == 0 the parameters are left
  // untouched (moments still advance).
  void step(std::span<double> params, std::span<const double> grad, double lr);

  std::size_t steps() const { return t_; }
  const AdamWConfig& config() const { return config_; }

 private:
  AdamWConfig config_;
  std::vector<double> m_;
  std::vector<double> v_;
  std::size_t t_ = 0;
};

}  // namespace radlabel

#endif  // RADLABEL_OPTIMIZER_H_
