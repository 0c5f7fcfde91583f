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

#ifndef RADLABEL_VOCABULARY_H_
#define RADLABEL_VOCABULARY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace radlabel {

using TokenId = std::int32_t;

// Bijective token <-> id table. Ids are contiguous from 0; the five special
// tokens always occupy ids 0..4.
class Vocabulary {
 public:
  static constexpr TokenId kPad = 0;
  static constexpr TokenId kUnk = 1;
  static constexpr TokenId kCls = 2;
  static constexpr TokenId kSep = 3;
  static constexpr TokenId kMask = 4;

  Vocabulary();

  // Specials, then every token of `texts` in first-seen order, then the
  // (lowercased) `extra_words`. Extra words are added whole even if they
  // contain punctuation.
  static Vocabulary build(std::span<const std::string> texts,
                          std::span<const std::string> extra_words);

  // Rebuilds from an id-ordered token list (checkpoint loading). Throws
  // Error when the specials are missing or a token repeats.
  static Vocabulary from_tokens(std::vector<std::string> tokens);

  // Returns the existing id when present.
  TokenId add(std::string_view token);

  std::optional<TokenId> find(std::string_view token) const;
  TokenId id_or_unk(std::string_view token) const;
  const std::string& token(TokenId id) const { return tokens_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  // Lowercase, split on whitespace and punctuation; unknown -> kUnk.
  std::vector<TokenId> tokenize(std::string_view text) const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> ids_;
};

}  // namespace radlabel

#endif  // RADLABEL_VOCABULARY_H_
