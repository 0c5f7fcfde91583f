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

#ifndef RADLABEL_BASELINES_H_
#define RADLABEL_BASELINES_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "radlabel/corpus.h"

namespace radlabel {

// Case-insensitive surface forms per category, indexed like the label space.
struct MentionLexicon {
  std::vector<std::vector<std::string>> forms;
};

// Category names and short names only.
MentionLexicon default_lexicon(const std::vector<Category>& categories);

// {"categories": [{"name", "surface_forms": [...]}]}, aligned to
// `categories`. Throws SpecError when a category is missing or has no forms.
MentionLexicon lexicon_from_json(const nlohmann::json& doc,
                                 const std::vector<Category>& categories);
MentionLexicon load_lexicon(const std::filesystem::path& path,
                            const std::vector<Category>& categories);

// Cues that negate mentions later in the same sentence.
struct NegationCueSet {
  std::vector<std::string> cues;  // lowercase
};

// no, not, without, r/o, rule out, no evidence of, free of, negative for,
// rather than.
NegationCueSet default_negation_cues();

// A JSON list of strings. Throws SpecError when empty.
NegationCueSet cues_from_json(const nlohmann::json& doc);
NegationCueSet load_cues(const std::filesystem::path& path);

// Positive iff any surface form or plural variant occurs word-bounded.
// No negation handling: "No liver cirrhosis." is positive for Cirrhosis.
LabelVector label_match(std::string_view text, const MentionLexicon& lexicon);

// As label_match, but a mention is suppressed when a cue occurs before it in
// the same sentence (split on '.', ';' and newlines).
LabelVector negation_cue_label(std::string_view text, const MentionLexicon& lexicon,
                               const NegationCueSet& cues);

}  // namespace radlabel

#endif  // RADLABEL_BASELINES_H_
