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

#ifndef RADLABEL_TEMPLATES_H_
#define RADLABEL_TEMPLATES_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "radlabel/vocabulary.h"

namespace radlabel {

enum class TemplateFormat { kReportFirst, kAnswerFirst };

TemplateFormat parse_template_format(const std::string& s);
std::string to_string(TemplateFormat format);

// A cloze prompt with one report slot and one mask slot:
//   report_first: [CLS] {report} {prefix} [MASK] {suffix} [SEP]
//   answer_first: [CLS] {prefix} [MASK] {infix} {report} {suffix} [SEP]
// `infix` is unused in report_first.
struct Template {
  std::string id;
  TemplateFormat format = TemplateFormat::kReportFirst;
  std::string prefix;
  std::string infix;
  std::string suffix;

  // Canonical pattern with [REPORT] and [MASK] placeholders and collapsed
  // whitespace, e.g. "[REPORT] The radiology report is related to [MASK] .".
  // Used for deduplication and tie-breaking.
  std::string pattern() const;

  // Scaffold words (prefix, infix, suffix) as tokenized by split_words.
  std::vector<std::string> scaffold_words() const;
};

// Throws SpecError when a scaffold part contains a [MASK]/[REPORT]/{report}
// placeholder.
void validate(const Template& t);

Template template_from_json(const nlohmann::json& doc);
nlohmann::ordered_json template_to_json(const Template& t);
Template load_template(const std::filesystem::path& path);
void save_template(const std::filesystem::path& path, const Template& t);

// "{report} The radiology report is related to [MASK]."
Template manual_template();
// The same prompt with "liver" inserted.
Template manual_liver_template();
// Hepatic/Liver/Abdominal answer- and report-first scaffolds, ids autot1..5.
std::vector<Template> reference_auto_templates();

struct EncodedInput {
  std::vector<TokenId> tokens;
  std::size_t mask_pos = 0;
  std::size_t report_tokens = 0;  // kept report tokens
  bool truncated = false;
};

// Tokenizes and lays out the prompt. When the result would exceed `max_len`,
// trailing report tokens are dropped; scaffold and special tokens are never
// truncated. Throws Error when the scaffold alone exceeds `max_len`.
EncodedInput render(const Template& t, std::string_view report_text,
                    const Vocabulary& vocab, std::size_t max_len);

// Space-joined token strings, for logs and tests.
std::string detokenize(const std::vector<TokenId>& tokens, const Vocabulary& vocab);

}  // namespace radlabel

#endif  // RADLABEL_TEMPLATES_H_
