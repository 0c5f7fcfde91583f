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

#include "radlabel/corpus.h"

#include <cstdio>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "radlabel/error.h"
#include "radlabel/io.h"
#include "radlabel/text.h"

namespace radlabel {

using nlohmann::json;
using nlohmann::ordered_json;

Date parse_date(std::string_view text) {
  auto digits = [&](std::size_t from, std::size_t count) {
    int value = 0;
    for (std::size_t i = from; i < from + count; ++i) {
      if (text[i] < '0' || text[i] > '9') return -1;
      value = value * 10 + (text[i] - '0');
    }
    return value;
  };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw Error("malformed date '" + std::string(text) + "' (want YYYY-MM-DD)");
  }
  const int y = digits(0, 4), m = digits(5, 2), d = digits(8, 2);
  const Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                  std::chrono::day{static_cast<unsigned>(d)}};
  if (y < 0 || m < 0 || d < 0 || !date.ok()) {
    throw Error("invalid date '" + std::string(text) + "'");
  }
  return date;
}

std::string format_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()),
                static_cast<unsigned>(date.day()));
  return buf;
}

bool Category::matches(std::string_view label) const {
  const std::string l = to_lower(label);
  return l == to_lower(name) || l == to_lower(short_name);
}

std::vector<Category> liver_ct_categories() {
  return {
      {"Cyst", "Cyst", 0},
      {"Hepatocellular Carcinoma", "HCC", 1},
      {"Post-Treatment", "Post-Treatment", 2},
      {"Cirrhosis", "Cirrhosis", 3},
      {"Steatosis", "Steatosis", 4},
      {"Metastasis", "Metastasis", 5},
      {"Hemangioma", "Hemangioma", 6},
  };
}

Corpus::Corpus(std::vector<Category> categories, std::vector<Report> reports)
    : categories_(std::move(categories)), reports_(std::move(reports)) {
  std::set<std::string> names;
  for (std::size_t i = 0; i < categories_.size(); ++i) {
    auto& c = categories_[i];
    if (c.name.empty()) throw Error("category " + std::to_string(i) + " has no name");
    if (c.short_name.empty()) c.short_name = c.name;
    if (c.index != i) {
      throw Error("category '" + c.name + "' has index " +
                  std::to_string(c.index) + ", expected " + std::to_string(i));
    }
    if (!names.insert(to_lower(c.name)).second) {
      throw Error("duplicate category '" + c.name + "'");
    }
  }
  std::unordered_set<std::string> ids;
  for (const auto& r : reports_) {
    if (r.id.empty()) throw Error("report with empty id");
    if (!ids.insert(r.id).second) throw Error("duplicate id '" + r.id + "'");
    if (r.text.empty()) throw Error("report '" + r.id + "' has empty text");
    if (r.gold.size() != categories_.size()) {
      throw Error("report '" + r.id + "': gold vector length " +
                  std::to_string(r.gold.size()) + " != " +
                  std::to_string(categories_.size()) + " categories");
    }
    for (auto g : r.gold) {
      if (g > 1) throw Error("report '" + r.id + "': label not binary");
    }
  }
}

std::optional<std::size_t> Corpus::find_category(std::string_view label) const {
  for (const auto& c : categories_) {
    if (c.matches(label)) return c.index;
  }
  return std::nullopt;
}

const Report* Corpus::find_report(std::string_view id) const {
  for (const auto& r : reports_) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::vector<std::size_t> Corpus::positive_counts() const {
  std::vector<std::size_t> counts(categories_.size(), 0);
  for (const auto& r : reports_) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += r.gold[i];
  }
  return counts;
}

Corpus Corpus::subset(std::span<const std::size_t> indices) const {
  std::vector<Report> picked;
  picked.reserve(indices.size());
  for (std::size_t i : indices) picked.push_back(reports_.at(i));
  return Corpus(categories_, std::move(picked));
}

namespace {

std::vector<Category> parse_header(const json& doc, const std::string& source,
                                   const std::vector<Category>* label_space) {
  if (!doc.is_object() || !doc.contains("categories") ||
      !doc["categories"].is_array()) {
    throw FormatError(source, 1, "expected header {\"categories\": [...]}");
  }
  std::vector<Category> out;
  for (const auto& entry : doc["categories"]) {
    Category c;
    if (entry.is_string()) {
      c.name = entry.get<std::string>();
    } else if (entry.is_object() && entry.contains("name") &&
               entry["name"].is_string()) {
      c.name = entry["name"].get<std::string>();
      if (entry.contains("short_name")) {
        c.short_name = entry["short_name"].get<std::string>();
      }
    } else {
      throw FormatError(source, 1, "header category must be a name or object");
    }
    if (c.short_name.empty()) c.short_name = c.name;
    if (label_space != nullptr) {
      const Category* known = nullptr;
      for (const auto& k : *label_space) {
        if (k.matches(c.name)) known = &k;
      }
      if (known == nullptr) {
        throw FormatError(source, 1, "unknown category '" + c.name + "' in header");
      }
      c.name = known->name;
      c.short_name = known->short_name;
    }
    c.index = out.size();
    for (const auto& prev : out) {
      if (prev.matches(c.name)) {
        throw FormatError(source, 1, "duplicate category '" + c.name + "'");
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

Report parse_record(const json& doc, const std::vector<Category>& categories,
                    const std::string& source, std::size_t line) {
  auto fail = [&](const std::string& what) {
    throw FormatError(source, line, what);
  };
  if (!doc.is_object()) fail("record is not a JSON object");
  for (const char* key : {"id", "date", "text"}) {
    if (!doc.contains(key) || !doc[key].is_string()) {
      fail(std::string("missing string field '") + key + "'");
    }
  }
  if (!doc.contains("labels") || !doc["labels"].is_object()) {
    fail("missing object field 'labels'");
  }
  Report r;
  r.id = doc["id"].get<std::string>();
  if (r.id.empty()) fail("empty id");
  try {
    r.date = parse_date(doc["date"].get<std::string>());
  } catch (const Error& e) {
    fail(e.what());
  }
  r.text = doc["text"].get<std::string>();
  if (r.text.empty()) fail("empty text");
  const auto& labels = doc["labels"];
  if (labels.size() != categories.size()) {
    fail("gold vector length mismatch: " + std::to_string(labels.size()) +
         " labels for " + std::to_string(categories.size()) + " categories");
  }
  r.gold.assign(categories.size(), 0);
  std::vector<bool> seen(categories.size(), false);
  for (const auto& [key, value] : labels.items()) {
    std::optional<std::size_t> idx;
    for (const auto& c : categories) {
      if (c.matches(key)) idx = c.index;
    }
    if (!idx) fail("unknown category '" + key + "' in labels");
    if (seen[*idx]) fail("category '" + key + "' labeled twice");
    seen[*idx] = true;
    int v = -1;
    if (value.is_boolean()) {
      v = value.get<bool>() ? 1 : 0;
    } else if (value.is_number_integer()) {
      v = value.get<int>();
    }
    if (v != 0 && v != 1) fail("label not binary for '" + key + "'");
    r.gold[*idx] = static_cast<std::uint8_t>(v);
  }
  return r;
}

}  // namespace

Corpus parse_corpus(std::istream& in, const std::string& source_name,
                    const std::vector<Category>* label_space) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<Category> categories;
  bool have_header = false;
  std::vector<Report> reports;
  std::unordered_set<std::string> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw FormatError(source_name, line_no, std::string("malformed JSON: ") + e.what());
    }
    if (!have_header) {
      categories = parse_header(doc, source_name, label_space);
      have_header = true;
      continue;
    }
    Report r = parse_record(doc, categories, source_name, line_no);
    if (!ids.insert(r.id).second) {
      throw FormatError(source_name, line_no, "duplicate id '" + r.id + "'");
    }
    reports.push_back(std::move(r));
  }
  if (!have_header) throw FormatError(source_name, 0, "empty corpus file (no header)");
  return Corpus(std::move(categories), std::move(reports));
}

Corpus load_corpus(const std::filesystem::path& path,
                   const std::vector<Category>* label_space) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus " + path.string());
  return parse_corpus(in, path.string(), label_space);
}

std::string serialize_corpus(const Corpus& corpus) {
  std::string out;
  ordered_json header;
  header["categories"] = ordered_json::array();
  for (const auto& c : corpus.categories()) {
    if (c.short_name == c.name) {
      header["categories"].push_back(c.name);
    } else {
      header["categories"].push_back({{"name", c.name}, {"short_name", c.short_name}});
    }
  }
  out += header.dump() + "\n";
  for (const auto& r : corpus.reports()) {
    ordered_json rec;
    rec["id"] = r.id;
    rec["date"] = format_date(r.date);
    rec["text"] = r.text;
    rec["labels"] = ordered_json::object();
    for (const auto& c : corpus.categories()) {
      rec["labels"][c.name] = static_cast<int>(r.gold[c.index]);
    }
    out += rec.dump() + "\n";
  }
  return out;
}

void save_corpus(const std::filesystem::path& path, const Corpus& corpus) {
  write_file_atomic(path, serialize_corpus(corpus));
}

SplitResult chronological_split(const Corpus& corpus, const Date& cutoff) {
  std::vector<std::size_t> train, test;
  const std::chrono::sys_days cut{cutoff};
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (std::chrono::sys_days{corpus.reports()[i].date} <= cut) {
      train.push_back(i);
    } else {
      test.push_back(i);
    }
  }
  SplitResult result{corpus.subset(train), corpus.subset(test), {}};
  if (train.empty()) {
    result.warnings.push_back("empty train pool: no report dated on or before " +
                              format_date(cutoff));
  }
  if (test.empty()) {
    result.warnings.push_back("empty test set: no report dated after " +
                              format_date(cutoff));
  }
  return result;
}

}  // namespace radlabel
