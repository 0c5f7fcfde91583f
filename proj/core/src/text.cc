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

#include "radlabel/text.h"

#include <algorithm>
#include <cctype>

namespace radlabel {

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool is_word_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u) != 0;
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (is_word_char(c)) {
      std::size_t j = i;
      while (j < text.size() && is_word_char(text[j])) ++j;
      out.push_back(to_lower(text.substr(i, j - i)));
      i = j;
    } else {
      out.emplace_back(1, c);
      ++i;
    }
  }
  return out;
}

std::vector<TextSpan> split_sentences(std::string_view text) {
  auto is_digit = [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  };
  std::vector<TextSpan> out;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    bool boundary = c == ';' || c == '\n' || c == '\r';
    if (c == '.') {
      const bool decimal = i > 0 && i + 1 < text.size() &&
                           is_digit(text[i - 1]) && is_digit(text[i + 1]);
      boundary = !decimal;
    }
    if (boundary) {
      out.push_back({begin, i});
      begin = i + 1;
    }
  }
  if (begin < text.size()) out.push_back({begin, text.size()});
  return out;
}

std::vector<std::size_t> find_bounded(std::string_view haystack,
                                      std::string_view needle) {
  std::vector<std::size_t> out;
  if (needle.empty() || needle.size() > haystack.size()) return out;
  const std::string hay = to_lower(haystack);
  const std::string pat = to_lower(needle);
  const bool check_left = is_word_char(pat.front());
  const bool check_right = is_word_char(pat.back());
  for (std::size_t pos = hay.find(pat); pos != std::string::npos;
       pos = hay.find(pat, pos + 1)) {
    const std::size_t end = pos + pat.size();
    if (check_left && pos > 0 && is_word_char(hay[pos - 1])) continue;
    if (check_right && end < hay.size() && is_word_char(hay[end])) continue;
    out.push_back(pos);
  }
  return out;
}

std::vector<std::string> surface_variants(std::string_view form) {
  std::vector<std::string> out;
  std::string base = to_lower(form);
  if (base.empty()) return out;
  out.push_back(base);
  if (!is_word_char(base.back())) return out;
  out.push_back(base + "s");
  if (base.size() > 2 && base.ends_with("is")) {
    out.push_back(base.substr(0, base.size() - 2) + "es");
  }
  return out;
}

std::vector<Mention> find_mentions(std::string_view text,
                                   const std::vector<std::string>& forms) {
  std::vector<Mention> out;
  for (const auto& form : forms) {
    for (const auto& variant : surface_variants(form)) {
      for (std::size_t off : find_bounded(text, variant)) {
        out.push_back({off, variant});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Mention& a, const Mention& b) {
    return a.offset != b.offset ? a.offset < b.offset
                                : a.form.size() > b.form.size();
  });
  // Drop duplicates at the same offset (a form listed twice, or a short name
  // equal to the name).
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Mention& a, const Mention& b) {
                          return a.offset == b.offset;
                        }),
            out.end());
  return out;
}

}  // namespace radlabel
