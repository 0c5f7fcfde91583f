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

#include "radlabel/vocabulary.h"

#include "radlabel/error.h"
#include "radlabel/text.h"

namespace radlabel {

namespace {
constexpr const char* kSpecials[] = {"[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"};
}

Vocabulary::Vocabulary() {
  for (const char* s : kSpecials) add(s);
}

Vocabulary Vocabulary::build(std::span<const std::string> texts,
                             std::span<const std::string> extra_words) {
  Vocabulary v;
  for (const auto& text : texts) {
    for (const auto& w : split_words(text)) v.add(w);
  }
  for (const auto& w : extra_words) v.add(to_lower(w));
  return v;
}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens) {
  Vocabulary v;
  if (tokens.size() < std::size(kSpecials)) throw Error("vocabulary lacks special tokens");
  for (std::size_t i = 0; i < std::size(kSpecials); ++i) {
    if (tokens[i] != kSpecials[i]) {
      throw Error("vocabulary id " + std::to_string(i) + " must be " + kSpecials[i]);
    }
  }
  for (std::size_t i = std::size(kSpecials); i < tokens.size(); ++i) {
    if (v.find(tokens[i])) throw Error("duplicate vocabulary token '" + tokens[i] + "'");
    v.add(tokens[i]);
  }
  return v;
}

TokenId Vocabulary::add(std::string_view token) {
  std::string key(token);
  if (auto it = ids_.find(key); it != ids_.end()) return it->second;
  const auto id = static_cast<TokenId>(tokens_.size());
  tokens_.push_back(key);
  ids_.emplace(std::move(key), id);
  return id;
}

std::optional<TokenId> Vocabulary::find(std::string_view token) const {
  if (auto it = ids_.find(std::string(token)); it != ids_.end()) return it->second;
  return std::nullopt;
}

TokenId Vocabulary::id_or_unk(std::string_view token) const {
  return find(token).value_or(kUnk);
}

std::vector<TokenId> Vocabulary::tokenize(std::string_view text) const {
  std::vector<TokenId> out;
  for (const auto& w : split_words(text)) out.push_back(id_or_unk(w));
  return out;
}

}  // namespace radlabel
