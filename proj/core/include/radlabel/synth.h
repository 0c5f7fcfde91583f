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

#ifndef RADLABEL_SYNTH_H_
#define RADLABEL_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radlabel/corpus.h"

namespace radlabel {

// How a positive finding is expressed in generated text.
enum class PositiveStyle {
  kDirect,   // sentences naming the category
  kSynonym,  // sentences that never name it ("fatty liver", "TACE")
  kMixed,    // either, uniformly
};

struct SynthCategory {
  Category category;
  double positive_rate = 0.0;  // (0, 1]
  PositiveStyle style = PositiveStyle::kDirect;
  std::vector<std::string> direct_patterns;
  std::vector<std::string> synonym_patterns;
  // Probability that a report negative for this category carries one of
  // the negation sentences (which name the category).
  double negation_rate = 0.0;
  std::vector<std::string> negation_patterns;
};

struct SynthSpec {
  std::vector<SynthCategory> categories;
  std::vector<std::string> filler;
  std::size_t min_filler = 1;
  std::size_t max_filler = 3;
  std::size_t size = 0;
  Date first_date{std::chrono::year{2008}, std::chrono::January, std::chrono::day{1}};
  Date last_date{std::chrono::year{2017}, std::chrono::December, std::chrono::day{31}};
  std::string id_prefix = "r";
};

// Throws SpecError naming the first offending field. Beyond ranges, checks
// that direct and negation sentences mention their category, synonym
// sentences do not, and filler mentions no category.
void validate(const SynthSpec& spec);

SynthSpec synth_spec_from_json(const nlohmann::json& doc);
nlohmann::ordered_json synth_spec_to_json(const SynthSpec& spec);
SynthSpec load_synth_spec(const std::filesystem::path& path);

// Each category is positive in exactly round(rate * size) reports. A
// positive report carries one positive sentence for the category; a negative
// one may carry a negation sentence; filler pads every report. Sentence
// order is shuffled and reports are dated uniformly in the date range and
// emitted in date order. Deterministic in (spec, seed).
Corpus generate_synthetic_corpus(const SynthSpec& spec, std::uint64_t seed);

}  // namespace radlabel

#endif  // RADLABEL_SYNTH_H_
