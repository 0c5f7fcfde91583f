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

#include "radlabel/template_selection.h"

#include "radlabel/error.h"
#include "radlabel/evalkit.h"

namespace radlabel {

SelectionResult select_best(const CandidateSet& candidates, const Corpus& train_set,
                            const TemplateModelFactory& factory, const TrainConfig& config) {
  if (candidates.candidates.empty()) throw Error("no template candidates to select from");
  SelectionResult result;
  bool found = false;
  for (std::size_t i = 0; i < candidates.candidates.size(); ++i) {
    const Template& t = candidates.candidates[i];
    CandidateOutcome outcome;
    outcome.id = t.id;
    outcome.pattern = t.pattern();
    try {
      PromptRadModel model = factory(t);
      const TrainResult trace = train(model, train_set, config);
      outcome.final_loss = trace.final_loss();
      const RunResult run =
          evaluate([&](const Report& r) { return predict(model, r); }, train_set, config.seed, t.id);
      outcome.train_macro_f1 = run.f1.macro;
      outcome.ok = true;
      if (!found || outcome.train_macro_f1 > result.outcomes[result.best_index].train_macro_f1) {
        result.best_index = i;
        found = true;
      }
    } catch (const std::exception& e) {
      outcome.error = e.what();
    }
    result.outcomes.push_back(std::move(outcome));
  }
  if (!found) {
    throw Error("training failed for all " + std::to_string(candidates.candidates.size()) +
                " template candidates; first: " + result.outcomes.front().error);
  }
  result.best = candidates.candidates[result.best_index];
  return result;
}

nlohmann::ordered_json selection_to_json(const SelectionResult& result) {
  nlohmann::ordered_json doc;
  doc["selected"] = template_to_json(result.best);
  doc["candidates"] = nlohmann::ordered_json::array();
  for (const auto& o : result.outcomes) {
    nlohmann::ordered_json e{{"id", o.id}, {"pattern", o.pattern}, {"ok", o.ok}};
    if (o.ok) {
      e["train_macro_f1"] = o.train_macro_f1;
      e["final_loss"] = o.final_loss;
    } else {
      e["error"] = o.error;
    }
    doc["candidates"].push_back(std::move(e));
  }
  return doc;
}

}  // namespace radlabel
