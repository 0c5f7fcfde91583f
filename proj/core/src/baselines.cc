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

#include "radlabel/baselines.h"

#include <algorithm>

#include "radlabel/error.h"
#include "radlabel/io.h"
#include "radlabel/text.h"

namespace radlabel {

MentionLexicon default_lexicon(const std::vector<Category>& categories) {
  MentionLexicon lex;
  for (const auto& c : categories) {
    std::vector<std::string> forms{c.name};
    if (to_lower(c.short_name) != to_lower(c.name)) forms.push_back(c.short_name);
    lex.forms.push_back(std::move(forms));
  }
  return lex;
}

MentionLexicon lexicon_from_json(const nlohmann::json& doc,
                                 const std::vector<Category>& categories) {
  if (!doc.is_object() || !doc.contains("categories") || !doc["categories"].is_array()) {
    throw SpecError("categories", "expected {\"categories\": [...]}");
  }
  MentionLexicon lex;
  for (const auto& c : categories) {
    const nlohmann::json* entry = nullptr;
    for (const auto& e : doc["categories"]) {
      if (e.is_object() && e.contains("name") && e["name"].is_string() &&
          c.matches(e["name"].get<std::string>())) {
        entry = &e;
      }
    }
    if (entry == nullptr) throw SpecError("categories", "no lexicon entry for '" + c.name + "'");
    std::vector<std::string> forms;
    if (entry->contains("surface_forms") && (*entry)["surface_forms"].is_array()) {
      for (const auto& f : (*entry)["surface_forms"]) {
        if (f.is_string() && !f.get<std::string>().empty()) forms.push_back(f.get<std::string>());
      }
    }
    if (forms.empty()) throw SpecError("categories", "'" + c.name + "' has no surface forms");
    lex.forms.push_back(std::move(forms));
  }
  return lex;
}

MentionLexicon load_lexicon(const std::filesystem::path& path,
                            const std::vector<Category>& categories) {
  return lexicon_from_json(read_json_file(path), categories);
}

NegationCueSet default_negation_cues() {
  return {{"no", "not", "without", "r/o", "rule out", "no evidence of", "free of",
           "negative for", "rather than"}};
}

NegationCueSet cues_from_json(const nlohmann::json& doc) {
  if (!doc.is_array()) throw SpecError("cues", "expected a JSON list of strings");
  NegationCueSet set;
  for (const auto& c : doc) {
    if (!c.is_string() || c.get<std::string>().empty()) {
      throw SpecError("cues", "cues must be non-empty strings");
    }
    set.cues.push_back(to_lower(c.get<std::string>()));
  }
  if (set.cues.empty()) throw SpecError("cues", "must not be empty");
  return set;
}

NegationCueSet load_cues(const std::filesystem::path& path) {
  return cues_from_json(read_json_file(path));
}

LabelVector label_match(std::string_view text, const MentionLexicon& lexicon) {
  LabelVector out(lexicon.forms.size(), 0);
  for (std::size_t c = 0; c < lexicon.forms.size(); ++c) {
    out[c] = find_mentions(text, lexicon.forms[c]).empty() ? 0 : 1;
  }
  return out;
}

LabelVector negation_cue_label(std::string_view text, const MentionLexicon& lexicon,
                               const NegationCueSet& cues) {
  LabelVector out(lexicon.forms.size(), 0);
  for (const auto& span : split_sentences(text)) {
    const std::string_view sentence = text.substr(span.begin, span.end - span.begin);
    // Earliest offset at which some cue ends; mentions starting at or after
    // it are negated.
    std::size_t first_cue_end = std::string_view::npos;
    for (const auto& cue : cues.cues) {
      const auto hits = find_bounded(sentence, cue);
      if (!hits.empty()) first_cue_end = std::min(first_cue_end, hits.front() + cue.size());
    }
    for (std::size_t c = 0; c < lexicon.forms.size(); ++c) {
      if (out[c]) continue;
      for (const auto& m : find_mentions(sentence, lexicon.forms[c])) {
        if (first_cue_end == std::string_view::npos || m.offset < first_cue_end) {
          out[c] = 1;
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace radlabel
