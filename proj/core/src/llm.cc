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

#include "radlabel/llm.h"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>

#include "radlabel/error.h"
#include "radlabel/io.h"
#include "radlabel/text.h"

namespace radlabel {

namespace {

constexpr std::string_view kSystem =
    "You are a professional radiologist who knows computed tomography (CT) very much. You can "
    "classify the CT report for the liver features or symptoms.";

constexpr std::string_view kUserHead =
    "Now you are going to perform a multi-label classification for a text report of liver "
    "computed tomography (CT). Given the potential categorized features ";

constexpr std::string_view kUserTail =
    ", please read the following liver computed tomography report of a patient. If the report "
    "is positive with a feature, please return the corresponding value. Liver computed "
    "tomography: ";

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void mark_index(std::string_view digits, LlmParse& out) {
  // Anything longer than 6 digits cannot be a legend index.
  if (digits.size() > 6) {
    out.notes.push_back("ignored index '" + std::string(digits.substr(0, 12)) + "...'");
    return;
  }
  std::size_t value = 0;
  for (char c : digits) value = value * 10 + static_cast<std::size_t>(c - '0');
  if (value < out.labels.size()) {
    out.labels[value] = 1;
  } else {
    out.notes.push_back("index " + std::string(digits) + " outside the legend");
  }
}

bool is_index_list(std::string_view line) {
  bool digit = false;
  for (char c : line) {
    if (is_digit(c)) {
      digit = true;
    } else if (!(c == ',' || c == ' ' || c == '\t' || c == '[' || c == ']' || c == '(' ||
                 c == ')' || c == '{' || c == '}' || c == ';')) {
      return false;
    }
  }
  return digit;
}

std::string exemplar_answer(const Report& r, const std::vector<Category>& categories) {
  std::string out;
  for (const auto& c : categories) {
    if (c.index < r.gold.size() && r.gold[c.index]) {
      out += std::to_string(c.index) + ". " + c.short_name + "\n";
    }
  }
  return out.empty() ? "None\n" : out;
}

}  // namespace

std::string legend_key(const Category& category) {
  if (category.short_name != category.name) return category.short_name;
  const bool upper = std::none_of(category.name.begin(), category.name.end(), [](char c) {
    return std::islower(static_cast<unsigned char>(c)) != 0;
  });
  return upper ? category.name : to_lower(category.name);
}

std::string category_legend(const std::vector<Category>& categories) {
  std::string out = "{";
  for (std::size_t i = 0; i < categories.size(); ++i) {
    if (i > 0) out += ", ";
    out += "'" + legend_key(categories[i]) + "': " + std::to_string(i);
  }
  return out + "}";
}

LlmExchange build_llm_request(const Report& report, const std::vector<Category>& categories,
                              const IclOptions* icl) {
  LlmExchange ex;
  ex.system = std::string(kSystem);
  std::string prefix;
  if (icl != nullptr && icl->train != nullptr && icl->k > 0) {
    std::vector<std::size_t> order(icl->train->size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(icl->seed);
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t taken = 0;
    prefix = "Here are labeled examples.\n\n";
    for (std::size_t idx : order) {
      if (taken == icl->k) break;
      const Report& r = icl->train->reports()[idx];
      if (r.id == report.id) continue;
      prefix += "Liver computed tomography: " + r.text + "\nAnswer:\n" +
                exemplar_answer(r, categories) + "\n";
      ++taken;
    }
  }
  ex.user = prefix + std::string(kUserHead) + category_legend(categories) +
            std::string(kUserTail) + report.text;
  return ex;
}

LlmParse parse_llm_response_detailed(std::string_view text,
                                     const std::vector<Category>& categories) {
  LlmParse out;
  out.labels.assign(categories.size(), 0);
  try {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t nl = text.find('\n', pos);
      const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
      std::string_view line = trim(text.substr(pos, end - pos));
      if (is_index_list(line)) {
        std::size_t i = 0;
        while (i < line.size()) {
          if (!is_digit(line[i])) {
            ++i;
            continue;
          }
          std::size_t j = i;
          while (j < line.size() && is_digit(line[j])) ++j;
          mark_index(line.substr(i, j - i), out);
          i = j;
        }
      } else if (!line.empty() && is_digit(line.front())) {
        std::size_t j = 0;
        while (j < line.size() && is_digit(line[j])) ++j;
        const char after = j < line.size() ? line[j] : '\0';
        if (after == '.' || after == ')' || after == ':' || after == ',' || after == ' ' ||
            after == '\t' || after == '-') {
          mark_index(line.substr(0, j), out);
        }
      }
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    for (const auto& c : categories) {
      if (c.index >= out.labels.size() || out.labels[c.index]) continue;
      for (const std::string& form : {c.name, c.short_name, legend_key(c)}) {
        if (!form.empty() && !find_bounded(text, form).empty()) {
          out.labels[c.index] = 1;
          break;
        }
      }
    }
  } catch (const std::exception& e) {
    out.notes.push_back(std::string("parse aborted: ") + e.what());
  }
  return out;
}

LabelVector parse_llm_response(std::string_view text, const std::vector<Category>& categories) {
  return parse_llm_response_detailed(text, categories).labels;
}

std::string request_key(const std::string& system, const std::string& user) {
  return sha256_hex(system + "\n" + user);
}

FixtureTransport::FixtureTransport(std::map<std::string, std::string> responses)
    : responses_(std::move(responses)) {}

FixtureTransport FixtureTransport::load(const std::filesystem::path& path) {
  const auto doc = read_json_file(path);
  if (!doc.is_object()) throw FormatError(path.string(), 0, "fixture must be a JSON object");
  std::map<std::string, std::string> responses;
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_string()) {
      throw FormatError(path.string(), 0, "fixture response for '" + key + "' is not a string");
    }
    responses.emplace(key, value.get<std::string>());
  }
  return FixtureTransport(std::move(responses));
}

std::string FixtureTransport::complete(const std::string& system, const std::string& user) {
  const std::string key = request_key(system, user);
  const auto it = responses_.find(key);
  if (it == responses_.end()) throw Error("no recorded response for request " + key);
  return it->second;
}

LlmExchange run_llm_labeler(LlmTransport& transport, const Report& report,
                            const std::vector<Category>& categories, const IclOptions* icl) {
  LlmExchange ex = build_llm_request(report, categories, icl);
  ex.response = transport.complete(ex.system, ex.user);
  ex.labels = parse_llm_response(ex.response, categories);
  return ex;
}

}  // namespace radlabel
