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

#ifndef RADLABEL_TEXT_H_
#define RADLABEL_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace radlabel {

// ASCII lowercase; bytes >= 0x80 pass through untouched.
std::string to_lower(std::string_view s);

// Letters, digits and any non-ASCII byte count as word characters.
bool is_word_char(char c);

// Lowercases and splits on whitespace and punctuation. Runs of word
// characters form one token; every other non-space byte is its own token.
// "R/O metastasis." -> {"r", "/", "o", "metastasis", "."}
std::vector<std::string> split_words(std::string_view text);

struct TextSpan {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive
};

// Sentence spans split on ';', newlines, and '.' unless the period sits
// between two digits ("0.6-cm"). Spans exclude the delimiter and may be empty.
std::vector<TextSpan> split_sentences(std::string_view text);

// Offsets of case-insensitive occurrences of `needle` in `haystack` that are
// word-bounded: a word character at either edge of the needle must not touch
// a word character in the haystack. "cyst" does not occur in "cystic".
std::vector<std::size_t> find_bounded(std::string_view haystack,
                                      std::string_view needle);

// The surface form plus its plural variants: "+s" and Latin "-is" -> "-es"
// (metastasis -> metastases). Lowercased. The plural applies to the final
// word of multi-word forms.
std::vector<std::string> surface_variants(std::string_view form);

struct Mention {
  std::size_t offset = 0;
  std::string form;  // the matched variant, lowercased
};

// All word-bounded occurrences of any variant of any form, sorted by offset.
std::vector<Mention> find_mentions(std::string_view text,
                                   const std::vector<std::string>& forms);

}  // namespace radlabel

#endif  // RADLABEL_TEXT_H_
