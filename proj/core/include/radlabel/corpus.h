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

#ifndef RADLABEL_CORPUS_H_
#define RADLABEL_CORPUS_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace radlabel {

using Date = std::chrono::year_month_day;

// Strict "YYYY-MM-DD". Throws Error on malformed or impossible dates.
Date parse_date(std::string_view text);
std::string format_date(const Date& date);

// One finding in the label space.
struct Category {
  std::string name;        // canonical, e.g. "Hepatocellular Carcinoma"
  std::string short_name;  // e.g. "HCC"; equals `name` when none is given
  std::size_t index = 0;

  // True when `label` equals the name or short name, case-insensitively.
  bool matches(std::string_view label) const;
};

// The seven liver CT findings, in the canonical index order:
// Cyst, HCC, Post-Treatment, Cirrhosis, Steatosis, Metastasis, Hemangioma.
std::vector<Category> liver_ct_categories();

using LabelVector = std::vector<std::uint8_t>;

struct Report {
  std::string id;
  Date date;
  std::string text;
  LabelVector gold;
};

// An immutable, validated collection of reports over one label space.
class Corpus {
 public:
  Corpus() = default;
  // Throws Error when a category name repeats, indices are not 0..n-1, an id
  // repeats, a text is empty, a gold value is not 0/1, or a gold vector does
  // not have one entry per category.
  Corpus(std::vector<Category> categories, std::vector<Report> reports);

  const std::vector<Category>& categories() const { return categories_; }
  const std::vector<Report>& reports() const { return reports_; }
  std::size_t size() const { return reports_.size(); }
  bool empty() const { return reports_.empty(); }
  std::size_t category_count() const { return categories_.size(); }

  std::optional<std::size_t> find_category(std::string_view label) const;
  const Report* find_report(std::string_view id) const;

  std::vector<std::size_t> positive_counts() const;

  // Reports at `indices`, in the given order.
  Corpus subset(std::span<const std::size_t> indices) const;

 private:
  std::vector<Category> categories_;
  std::vector<Report> reports_;
};

// Parses the line-delimited corpus format: a header line
// {"categories": [...]} followed by one {"id", "date", "text", "labels"}
// object per line. Header entries are names or {"name", "short_name"}
// objects. When `label_space` is given, every header name must belong to it.
// Throws FormatError with the 1-based line number.
Corpus parse_corpus(std::istream& in, const std::string& source_name,
                    const std::vector<Category>* label_space = nullptr);
Corpus load_corpus(const std::filesystem::path& path,
                   const std::vector<Category>* label_space = nullptr);

std::string serialize_corpus(const Corpus& corpus);
void save_corpus(const std::filesystem::path& path, const Corpus& corpus);

struct SplitResult {
  Corpus train_pool;  // date <= cutoff
  Corpus test;        // date > cutoff
  std::vector<std::string> warnings;
};

SplitResult chronological_split(const Corpus& corpus, const Date& cutoff);

}  // namespace radlabel

#endif  // RADLABEL_CORPUS_H_
