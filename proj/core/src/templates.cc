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

#include "radlabel/templates.h"

#include <sstream>

#include "radlabel/error.h"
#include "radlabel/io.h"
#include "radlabel/text.h"

namespace radlabel {

using nlohmann::json;
using nlohmann::ordered_json;

TemplateFormat parse_template_format(const std::string& s) {
  if (s == "report_first") return TemplateFormat::kReportFirst;
  if (s == "answer_first") return TemplateFormat::kAnswerFirst;
  throw SpecError("format", "expected report_first or answer_first, got '" + s + "'");
}

std::string to_string(TemplateFormat format) {
  return format == TemplateFormat::kReportFirst ? "report_first" : "answer_first";
}

namespace {

std::string collapse(const std::string& s) {
  std::istringstream in(s);
  std::string word, out;
  while (in >> word) {
    if (!out.empty()) out.push_back(' ');
    out += word;
  }
  return out;
}

void append(std::string& out, const std::string& part) {
  const std::string p = collapse(part);
  if (p.empty()) return;
  if (!out.empty()) out.push_back(' ');
  out += p;
}

}  // namespace

std::string Template::pattern() const {
  std::string out;
  if (format == TemplateFormat::kReportFirst) {
    append(out, "[REPORT]");
    append(out, prefix);
    append(out, "[MASK]");
    append(out, suffix);
  } else {
    append(out, prefix);
    append(out, "[MASK]");
    append(out, infix);
    append(out, "[REPORT]");
    append(out, suffix);
  }
  return out;
}

std::vector<std::string> Template::scaffold_words() const {
  std::vector<std::string> out;
  for (const auto* part : {&prefix, &infix, &suffix}) {
    if (part == &infix && format == TemplateFormat::kReportFirst) continue;
    for (auto& w : split_words(*part)) out.push_back(std::move(w));
  }
  return out;
}

void validate(const Template& t) {
  for (const auto& [name, part] : {std::pair{"prefix", &t.prefix},
                                   std::pair{"infix", &t.infix},
                                   std::pair{"suffix", &t.suffix}}) {
    for (const char* placeholder : {"[MASK]", "[REPORT]", "{report}", "[mask]", "[report]"}) {
      if (part->find(placeholder) != std::string::npos) {
        throw SpecError(name, std::string("contains placeholder ") + placeholder);
      }
    }
  }
}

Template template_from_json(const json& doc) {
  if (!doc.is_object()) throw SpecError("<root>", "expected a template object");
  Template t;
  t.id = doc.value("id", std::string("template"));
  if (!doc.contains("format") || !doc["format"].is_string()) {
    throw SpecError("format", "missing");
  }
  t.format = parse_template_format(doc["format"].get<std::string>());
  t.prefix = doc.value("prefix", std::string());
  t.infix = doc.value("infix", std::string());
  t.suffix = doc.value("suffix", std::string());
  validate(t);
  return t;
}

ordered_json template_to_json(const Template& t) {
  ordered_json doc;
  doc["id"] = t.id;
  doc["format"] = to_string(t.format);
  doc["prefix"] = t.prefix;
  doc["infix"] = t.infix;
  doc["suffix"] = t.suffix;
  return doc;
}

Template load_template(const std::filesystem::path& path) {
  return template_from_json(read_json_file(path));
}

void save_template(const std::filesystem::path& path, const Template& t) {
  write_json_file(path, template_to_json(t));
}

Template manual_template() {
  return {"manual", TemplateFormat::kReportFirst, "The radiology report is related to", "", "."};
}

Template manual_liver_template() {
  return {"manual_liver", TemplateFormat::kReportFirst,
          "The liver radiology report is related to", "", "."};
}

std::vector<Template> reference_auto_templates() {
  return {
      {"autot1", TemplateFormat::kAnswerFirst, "Hepatic", ":", ""},
      {"autot2", TemplateFormat::kAnswerFirst, "Liver", ":", ""},
      {"autot3", TemplateFormat::kReportFirst, "Hepatic", "", "."},
      {"autot4", TemplateFormat::kAnswerFirst, "Abdominal", ".", ""},
      {"autot5", TemplateFormat::kAnswerFirst, "Liver", "in", ""},
  };
}

EncodedInput render(const Template& t, std::string_view report_text,
                    const Vocabulary& vocab, std::size_t max_len) {
  const auto prefix = vocab.tokenize(t.prefix);
  const auto infix = t.format == TemplateFormat::kAnswerFirst ? vocab.tokenize(t.infix)
                                                              : std::vector<TokenId>{};
  const auto suffix = vocab.tokenize(t.suffix);
  auto report = vocab.tokenize(report_text);

  const std::size_t scaffold = 3 + prefix.size() + infix.size() + suffix.size();
  if (scaffold > max_len) {
    throw Error("template '" + t.id + "' needs " + std::to_string(scaffold) +
                " tokens, more than max_len " + std::to_string(max_len));
  }
  EncodedInput out;
  const std::size_t room = max_len - scaffold;
  if (report.size() > room) {
    report.resize(room);
    out.truncated = true;
  }
  out.report_tokens = report.size();

  auto& seq = out.tokens;
  seq.reserve(scaffold + report.size());
  seq.push_back(Vocabulary::kCls);
  auto put = [&](const std::vector<TokenId>& part) {
    seq.insert(seq.end(), part.begin(), part.end());
  };
  if (t.format == TemplateFormat::kReportFirst) {
    put(report);
    put(prefix);
    out.mask_pos = seq.size();
    seq.push_back(Vocabulary::kMask);
    put(suffix);
  } else {
    put(prefix);
    out.mask_pos = seq.size();
    seq.push_back(Vocabulary::kMask);
    put(infix);
    put(report);
    put(suffix);
  }
  seq.push_back(Vocabulary::kSep);
  return out;
}

std::string detokenize(const std::vector<TokenId>& tokens, const Vocabulary& vocab) {
  std::string out;
  for (TokenId id : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += vocab.token(id);
  }
  return out;
}

}  // namespace radlabel
