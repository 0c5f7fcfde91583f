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

#ifndef RADLABEL_TEMPLATE_SELECTION_H_
#define RADLABEL_TEMPLATE_SELECTION_H_

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radlabel/corpus.h"
#include "radlabel/labeler.h"
#include "radlabel/template_generation.h"

namespace radlabel {

struct CandidateOutcome {
  std::string id;
  std::string pattern;
  bool ok = false;
  double train_macro_f1 = 0.0;
  double final_loss = 0.0;
  std::string error;
};

struct SelectionResult {
  Template best;
  std::size_t best_index = 0;
  std::vector<CandidateOutcome> outcomes;  // parallel to the candidate list
};

// Builds an untrained model around a template.
using TemplateModelFactory = std::function<PromptRadModel(const Template&)>;

// Trains one model per candidate and keeps the highest training-set macro F1
// at the model's tau (ties: earlier candidate). Failed candidates are
// recorded and skipped; throws Error when all fail.
SelectionResult select_best(const CandidateSet& candidates, const Corpus& train,
                            const TemplateModelFactory& factory, const TrainConfig& config);

nlohmann::ordered_json selection_to_json(const SelectionResult& result);

}  // namespace radlabel

#endif  // RADLABEL_TEMPLATE_SELECTION_H_
