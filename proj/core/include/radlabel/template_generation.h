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

#ifndef RADLABEL_TEMPLATE_GENERATION_H_
#define RADLABEL_TEMPLATE_GENERATION_H_

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radlabel/corpus.h"
#include "radlabel/templates.h"
#include "radlabel/verbalizer.h"

namespace radlabel {

// A report paired with the label word of one of its positive categories.
struct FilledInput {
  std::string report_id;
  std::string report;
  std::string label_word;
};

// Conditional template generator. `propose` returns up to `max` scaffolds of
// the given format; `log_prob` scores a template filled with the input.
class TemplateGenerator {
 public:
  virtual ~TemplateGenerator() = default;
  virtual std::string name() const = 0;
  virtual std::vector<Template> propose(const FilledInput& input, TemplateFormat format,
                                        std::size_t max) = 0;
  virtual double log_prob(const Template& t, const FilledInput& input) = 0;
};

// Deterministic grammar over organ words and short connectors. The
// log-probability rewards scaffold words that occur in the report.
class GrammarTemplateGenerator final : public TemplateGenerator {
 public:
  GrammarTemplateGenerator();
  std::string name() const override { return "grammar"; }
  std::vector<Template> propose(const FilledInput& input, TemplateFormat format,
                                std::size_t max) override;
  double log_prob(const Template& t, const FilledInput& input) override;

  // Every scaffold of `format` the grammar can produce, in proposal order.
  const std::vector<Template>& scaffolds(TemplateFormat format) const;

 private:
  std::vector<Template> report_first_;
  std::vector<Template> answer_first_;
};

// One input per (report, positive category), using the category's primary
// word. `verbalizer` must be aligned to the corpus label space.
std::vector<FilledInput> filled_inputs(const Corpus& train, const Verbalizer& verbalizer);

struct CandidateSet {
  std::vector<Template> candidates;
  std::vector<double> scores;  // joint log-likelihood, parallel to candidates
};

// At most `per_format` candidates per format, unique by pattern, with ids
// "<format>_<n>". Generator failures are rethrown as Error with the report id.
CandidateSet generate_candidates(TemplateGenerator& generator, const Corpus& train,
                                 const Verbalizer& verbalizer, std::size_t per_format);

// Scores each candidate by the summed log-probability over all filled inputs
// and sorts descending; ties by pattern. Throws Error on a non-finite score.
CandidateSet rank_candidates(const CandidateSet& candidates, const Corpus& train,
                             const Verbalizer& verbalizer, TemplateGenerator& generator);

nlohmann::ordered_json candidates_to_json(const CandidateSet& set);

}  // namespace radlabel

#endif  // RADLABEL_TEMPLATE_GENERATION_H_
