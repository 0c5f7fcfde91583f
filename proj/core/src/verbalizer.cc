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

#include "radlabel/verbalizer.h"

#include <algorithm>
#include <set>

#include "radlabel/error.h"
#include "radlabel/io.h"
#include "radlabel/text.h"

namespace radlabel {

using nlohmann::json;
using nlohmann::ordered_json;

VerbalizerMode parse_verbalizer_mode(const std::string& s) {
  if (s == "single") return VerbalizerMode::kSingle;
  if (s == "multi") return VerbalizerMode::kMulti;
  throw SpecError("verbalizer-mode", "expected 'single' or 'multi', got '" + s + "'");
}

std::string to_string(VerbalizerMode mode) {
  return mode == VerbalizerMode::kSingle ? "single" : "multi";
}

std::vector<std::string> Verbalizer::all_words() const {
  std::vector<std::string> out;
  for (const auto& e : entries) out.insert(out.end(), e.words.begin(), e.words.end());
  return out;
}

Verbalizer verbalizer_from_json(const json& doc, VerbalizerMode mode) {
  if (!doc.is_object() || !doc.contains("categories") || !doc["categories"].is_array()) {
    throw SpecError("categories", "expected {\"categories\": [...]}");
  }
  Verbalizer v;
  v.mode = mode;
  for (std::size_t i = 0; i < doc["categories"].size(); ++i) {
    const auto& c = doc["categories"][i];
    const std::string field = "categories[" + std::to_string(i) + "]";
    if (!c.is_object() || !c.contains("name") || !c["name"].is_string()) {
      throw SpecError(field + ".name", "missing");
    }
    VerbalizerEntry e;
    e.category = c["name"].get<std::string>();
    if (!c.contains("words") || !c["words"].is_array() || c["words"].empty()) {
      throw SpecError(field + ".words", "category '" + e.category + "' has no mapping words");
    }
    std::set<std::string> seen;
    for (const auto& w : c["words"]) {
      if (!w.is_string()) throw SpecError(field + ".words", "expected strings");
      std::string word = to_lower(w.get<std::string>());
      if (word.empty()) {
        throw SpecError(field + ".words", "empty word for '" + e.category + "'");
      }
      if (split_words(word).size() != 1) {
        throw SpecError(field + ".words",
                        "'" + word + "' is not a single token (category '" + e.category + "')");
      }
      if (!seen.insert(word).second) {
        throw SpecError(field + ".words",
                        "duplicate word '" + word + "' for '" + e.category + "'");
      }
      e.words.push_back(std::move(word));
    }
    if (mode == VerbalizerMode::kSingle) e.words.resize(1);
    for (const auto& prev : v.entries) {
      if (to_lower(prev.category) == to_lower(e.category)) {
        throw SpecError(field + ".name", "duplicate category '" + e.category + "'");
      }
    }
    v.entries.push_back(std::move(e));
  }
  return v;
}

ordered_json verbalizer_to_json(const Verbalizer& verbalizer) {
  ordered_json doc;
  doc["mode"] = to_string(verbalizer.mode);
  doc["categories"] = ordered_json::array();
  for (const auto& e : verbalizer.entries) {
    doc["categories"].push_back({{"name", e.category}, {"words", e.words}});
  }
  return doc;
}

Verbalizer load_verbalizer(const std::filesystem::path& path, VerbalizerMode mode) {
  return verbalizer_from_json(read_json_file(path), mode);
}

Verbalizer liver_ct_verbalizer(VerbalizerMode mode) {
  const json doc = {
      {"categories",
       {
           {{"name", "Cyst"}, {"words", {"cyst"}}},
           {{"name", "Hepatocellular Carcinoma"}, {"words", {"hcc", "hepatoma"}}},
           {{"name", "Cirrhosis"}, {"words", {"cirrhosis"}}},
           {{"name", "Post-Treatment"}, {"words", {"posttreatment"}}},
           {{"name", "Steatosis"}, {"words", {"steatosis", "steatohepatitis"}}},
           {{"name", "Metastasis"}, {"words", {"metastasis"}}},
           {{"name", "Hemangioma"}, {"words", {"hemangioma"}}},
       }},
  };
  return verbalizer_from_json(doc, mode);
}

Verbalizer align(const Verbalizer& verbalizer, const std::vector<Category>& categories) {
  Verbalizer out;
  out.mode = verbalizer.mode;
  for (const auto& c : categories) {
    auto it = std::find_if(verbalizer.entries.begin(), verbalizer.entries.end(),
                           [&](const VerbalizerEntry& e) { return c.matches(e.category); });
    if (it == verbalizer.entries.end()) {
      throw SpecError("categories", "verbalizer has no entry for category '" + c.name + "'");
    }
    out.entries.push_back(*it);
  }
  return out;
}

std::size_t MappingMatrix::row_size(std::size_t i) const {
  std::size_t n = 0;
  for (std::size_t m = 0; m < cols; ++m) n += valid[i * cols + m];
  return n;
}

std::vector<TokenId> MappingMatrix::distinct_ids() const {
  std::set<TokenId> ids;
  for (std::size_t k = 0; k < token_ids.size(); ++k) {
    if (valid[k]) ids.insert(token_ids[k]);
  }
  return {ids.begin(), ids.end()};
}

MappingMatrix build_matrix(const Verbalizer& verbalizer, const Vocabulary& vocab) {
  MappingMatrix m;
  m.rows = verbalizer.entries.size();
  for (const auto& e : verbalizer.entries) m.cols = std::max(m.cols, e.words.size());
  m.token_ids.assign(m.rows * m.cols, Vocabulary::kPad);
  m.valid.assign(m.rows * m.cols, 0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    const auto& e = verbalizer.entries[i];
    for (std::size_t j = 0; j < e.words.size(); ++j) {
      const auto id = vocab.find(e.words[j]);
      if (!id) {
        throw Error("unmapped word '" + e.words[j] + "' for category '" + e.category +
                    "': not a vocabulary token");
      }
      m.token_ids[i * m.cols + j] = *id;
      m.valid[i * m.cols + j] = 1;
    }
  }
  return m;
}

std::vector<double> category_scores(std::span<const double> logits,
                                    const MappingMatrix& matrix) {
  std::vector<double> z(matrix.rows);
  const auto arg = category_argmax(logits, matrix);
  for (std::size_t i = 0; i < matrix.rows; ++i) {
    z[i] = logits[static_cast<std::size_t>(matrix.id(i, arg[i]))];
  }
  return z;
}

std::vector<std::size_t> category_argmax(std::span<const double> logits,
                                         const MappingMatrix& matrix) {
  std::vector<std::size_t> arg(matrix.rows, 0);
  for (std::size_t i = 0; i < matrix.rows; ++i) {
    bool found = false;
    double best = 0.0;
    for (std::size_t m = 0; m < matrix.cols; ++m) {
      if (!matrix.is_valid(i, m)) continue;
      const double v = logits[static_cast<std::size_t>(matrix.id(i, m))];
      if (!found || v > best) {
        best = v;
        arg[i] = m;
        found = true;
      }
    }
  }
  return arg;
}

}  // namespace radlabel
