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

#include "radlabel/template_generation.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_set>

#include "radlabel/error.h"
#include "radlabel/text.h"

namespace radlabel {

namespace {

const char* const kOrgans[] = {"Hepatic", "Liver", "Abdominal"};

Template make(TemplateFormat format, std::string prefix, std::string infix, std::string suffix) {
  Template t;
  t.format = format;
  t.prefix = std::move(prefix);
  t.infix = std::move(infix);
  t.suffix = std::move(suffix);
  t.id = to_string(format);
  return t;
}

}  // namespace

GrammarTemplateGenerator::GrammarTemplateGenerator() {
  const auto af = TemplateFormat::kAnswerFirst;
  const auto rf = TemplateFormat::kReportFirst;
  for (const char* organ : kOrgans) {
    const std::string o = organ;
    const std::string lo = to_lower(o);
    answer_first_.push_back(make(af, o, ":", ""));
    answer_first_.push_back(make(af, o, "in", ""));
    answer_first_.push_back(make(af, o, ".", ""));
    answer_first_.push_back(make(af, o + " findings of", ":", ""));
    answer_first_.push_back(make(af, "Imaging shows " + lo, ".", ""));
    report_first_.push_back(make(rf, o, "", "."));
    report_first_.push_back(make(rf, "Consistent with " + lo, "", "."));
    report_first_.push_back(make(rf, "The " + lo + " shows", "", "."));
    report_first_.push_back(make(rf, o + " findings :", "", "."));
    report_first_.push_back(make(rf, "Impression : " + lo, "", "."));
  }
}

const std::vector<Template>& GrammarTemplateGenerator::scaffolds(TemplateFormat format) const {
  return format == TemplateFormat::kAnswerFirst ? answer_first_ : report_first_;
}

std::vector<Template> GrammarTemplateGenerator::propose(const FilledInput& input,
                                                        TemplateFormat format, std::size_t max) {
  const auto& all = scaffolds(format);
  // Start at a position fixed by the label word so different inputs favour
  // different scaffolds.
  std::size_t h = 0;
  for (char c : input.label_word) h = h * 131 + static_cast<unsigned char>(c);
  std::vector<Template> out;
  for (std::size_t i = 0; i < all.size() && out.size() < max; ++i) {
    out.push_back(all[(h + i) % all.size()]);
  }
  return out;
}

double GrammarTemplateGenerator::log_prob(const Template& t, const FilledInput& input) {
  const auto report_words = split_words(input.report);
  const std::unordered_set<std::string> seen(report_words.begin(), report_words.end());
  double lp = 0.0;
  for (const auto& w : t.scaffold_words()) {
    lp += seen.count(w) ? std::log(0.5) : std::log(0.1);
  }
  // The label word itself is always generated.
  lp += std::log(0.9);
  return lp;
}

std::vector<FilledInput> filled_inputs(const Corpus& train, const Verbalizer& verbalizer) {
  if (verbalizer.entries.size() != train.category_count()) {
    throw Error("verbalizer is not aligned to the corpus label space");
  }
  std::vector<FilledInput> out;
  for (const auto& r : train.reports()) {
    for (std::size_t i = 0; i < r.gold.size(); ++i) {
      if (r.gold[i]) out.push_back({r.id, r.text, verbalizer.entries[i].words.front()});
    }
  }
  return out;
}

CandidateSet generate_candidates(TemplateGenerator& generator, const Corpus& train,
                                 const Verbalizer& verbalizer, std::size_t per_format) {
  const auto inputs = filled_inputs(train, verbalizer);
  CandidateSet set;
  for (auto format : {TemplateFormat::kReportFirst, TemplateFormat::kAnswerFirst}) {
    std::set<std::string> patterns;
    std::size_t count = 0;
    for (const auto& input : inputs) {
      if (count == per_format) break;
      std::vector<Template> proposed;
      try {
        proposed = generator.propose(input, format, per_format);
      } catch (const std::exception& e) {
        throw Error("generator '" + generator.name() + "' failed on report '" + input.report_id +
                    "': " + e.what());
      }
      for (auto& t : proposed) {
        if (count == per_format) break;
        if (t.format != format) continue;
        validate(t);
        if (!patterns.insert(t.pattern()).second) continue;
        ++count;
        t.id = to_string(format) + "_" + std::to_string(count);
        set.candidates.push_back(std::move(t));
        set.scores.push_back(0.0);
      }
    }
  }
  return set;
}

CandidateSet rank_candidates(const CandidateSet& candidates, const Corpus& train,
                             const Verbalizer& verbalizer, TemplateGenerator& generator) {
  const auto inputs = filled_inputs(train, verbalizer);
  std::vector<double> scores;
  for (const auto& t : candidates.candidates) {
    double total = 0.0;
    for (const auto& input : inputs) total += generator.log_prob(t, input);
    if (!std::isfinite(total)) {
      throw Error("non-finite score for candidate '" + t.pattern() + "'");
    }
    scores.push_back(total);
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::string> patterns;
  for (const auto& t : candidates.candidates) patterns.push_back(t.pattern());
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return patterns[a] < patterns[b];
  });
  CandidateSet out;
  for (std::size_t i : order) {
    out.candidates.push_back(candidates.candidates[i]);
    out.scores.push_back(scores[i]);
  }
  return out;
}

nlohmann::ordered_json candidates_to_json(const CandidateSet& set) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < set.candidates.size(); ++i) {
    auto entry = template_to_json(set.candidates[i]);
    entry["pattern"] = set.candidates[i].pattern();
    entry["score"] = set.scores[i];
    doc.push_back(std::move(entry));
  }
  return doc;
}

}  // namespace radlabel
