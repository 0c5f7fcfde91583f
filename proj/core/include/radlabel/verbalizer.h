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

#ifndef RADLABEL_VERBALIZER_H_
#define RADLABEL_VERBALIZER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radlabel/corpus.h"
#include "radlabel/vocabulary.h"

namespace radlabel {

enum class VerbalizerMode { kSingle, kMulti };

VerbalizerMode parse_verbalizer_mode(const std::string& s);
std::string to_string(VerbalizerMode mode);

struct VerbalizerEntry {
  std::string category;            // name as written in the file
  std::vector<std::string> words;  // primary first; lowercase single tokens
};

// Label-to-word mappings. Entries follow the order they were loaded or
// aligned in.
struct Verbalizer {
  VerbalizerMode mode = VerbalizerMode::kMulti;
  std::vector<VerbalizerEntry> entries;

  std::vector<std::string> all_words() const;
};

// Parses {"categories": [{"name", "words": [primary, synonyms...]}]}. Single
// mode keeps only the primary word. Throws SpecError on an empty word list,
// an empty or multi-token word, or a duplicate word within one category.
Verbalizer verbalizer_from_json(const nlohmann::json& doc, VerbalizerMode mode);
nlohmann::ordered_json verbalizer_to_json(const Verbalizer& verbalizer);
Verbalizer load_verbalizer(const std::filesystem::path& path, VerbalizerMode mode);

// The mappings used for the liver CT findings: synonyms for HCC (hepatoma)
// and Steatosis (steatohepatitis); every other category maps to one word.
Verbalizer liver_ct_verbalizer(VerbalizerMode mode);

// Reorders entries to follow `categories` (matched by name or short name).
// Throws SpecError when a category has no entry.
Verbalizer align(const Verbalizer& verbalizer, const std::vector<Category>& categories);

// n x M padded token-id matrix with a validity mask, row-major.
struct MappingMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;  // M = max words per category
  std::vector<TokenId> token_ids;
  std::vector<std::uint8_t> valid;

  TokenId id(std::size_t i, std::size_t m) const { return token_ids[i * cols + m]; }
  bool is_valid(std::size_t i, std::size_t m) const { return valid[i * cols + m] != 0; }
  std::size_t row_size(std::size_t i) const;

  // Distinct valid token ids, ascending.
  std::vector<TokenId> distinct_ids() const;
};

// Throws Error("unmapped word ...") naming the word and category when a word
// is not a single in-vocabulary token.
MappingMatrix build_matrix(const Verbalizer& verbalizer, const Vocabulary& vocab);

// z[i] = max over valid m of logits[id(i, m)]. Padded cells are never read.
std::vector<double> category_scores(std::span<const double> logits,
                                    const MappingMatrix& matrix);

// Column of the first maximum in each row.
std::vector<std::size_t> category_argmax(std::span<const double> logits,
                                         const MappingMatrix& matrix);

}  // namespace radlabel

#endif  // RADLABEL_VERBALIZER_H_
