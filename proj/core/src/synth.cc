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

#include "radlabel/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "radlabel/error.h"
#include "radlabel/io.h"
#include "radlabel/text.h"

namespace radlabel {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::vector<std::string> forms_of(const Category& c) {
  std::vector<std::string> forms{c.name};
  if (c.short_name != c.name) forms.push_back(c.short_name);
  return forms;
}

std::string style_name(PositiveStyle s) {
  switch (s) {
    case PositiveStyle::kDirect: return "direct";
    case PositiveStyle::kSynonym: return "synonym";
    case PositiveStyle::kMixed: return "mixed";
  }
  return "direct";
}

PositiveStyle parse_style(const std::string& s, const std::string& field) {
  if (s == "direct") return PositiveStyle::kDirect;
  if (s == "synonym") return PositiveStyle::kSynonym;
  if (s == "mixed") return PositiveStyle::kMixed;
  throw SpecError(field, "unknown style '" + s + "' (direct|synonym|mixed)");
}

std::vector<std::string> string_list(const json& doc, const char* key,
                                     const std::string& field) {
  if (!doc.contains(key)) return {};
  if (!doc[key].is_array()) throw SpecError(field + "." + key, "expected a list");
  std::vector<std::string> out;
  for (const auto& v : doc[key]) {
    if (!v.is_string()) throw SpecError(field + "." + key, "expected strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

void validate(const SynthSpec& spec) {
  if (spec.categories.empty()) throw SpecError("categories", "must not be empty");
  if (spec.size == 0) throw SpecError("size", "must be positive");
  if (spec.filler.empty()) throw SpecError("filler", "must not be empty");
  if (spec.max_filler < spec.min_filler) {
    throw SpecError("max_filler", "must be >= min_filler");
  }
  if (std::chrono::sys_days{spec.last_date} < std::chrono::sys_days{spec.first_date}) {
    throw SpecError("date_range", "last date precedes first date");
  }
  for (std::size_t i = 0; i < spec.categories.size(); ++i) {
    const auto& sc = spec.categories[i];
    const std::string field = "categories[" + std::to_string(i) + "]";
    if (sc.category.name.empty()) throw SpecError(field + ".name", "must not be empty");
    for (std::size_t j = 0; j < i; ++j) {
      if (spec.categories[j].category.matches(sc.category.name)) {
        throw SpecError(field + ".name", "duplicate category '" + sc.category.name + "'");
      }
    }
    if (!(sc.positive_rate > 0.0 && sc.positive_rate <= 1.0)) {
      throw SpecError(field + ".positive_rate", "must lie in (0, 1]");
    }
    if (!(sc.negation_rate >= 0.0 && sc.negation_rate <= 1.0)) {
      throw SpecError(field + ".negation_rate", "must lie in [0, 1]");
    }
    if (sc.direct_patterns.empty()) {
      throw SpecError(field + ".direct_patterns", "needs at least one pattern");
    }
    if (sc.negation_patterns.empty()) {
      throw SpecError(field + ".negation_patterns", "needs at least one pattern");
    }
    if (sc.style != PositiveStyle::kDirect && sc.synonym_patterns.empty()) {
      throw SpecError(field + ".synonym_patterns",
                      "style '" + style_name(sc.style) + "' needs synonym patterns");
    }
    const auto forms = forms_of(sc.category);
    auto check = [&](const std::vector<std::string>& patterns, const char* key,
                     bool must_mention) {
      for (std::size_t p = 0; p < patterns.size(); ++p) {
        const std::string f = field + "." + key + "[" + std::to_string(p) + "]";
        if (patterns[p].empty()) throw SpecError(f, "empty sentence");
        const bool mentions = !find_mentions(patterns[p], forms).empty();
        if (mentions != must_mention) {
          throw SpecError(f, must_mention ? "does not mention '" + sc.category.name + "'"
                                          : "mentions '" + sc.category.name + "'");
        }
      }
    };
    check(sc.direct_patterns, "direct_patterns", true);
    check(sc.negation_patterns, "negation_patterns", true);
    check(sc.synonym_patterns, "synonym_patterns", false);
    // A sentence naming another category would make that category's gold
    // disagree with the text.
    for (std::size_t j = 0; j < spec.categories.size(); ++j) {
      if (j == i) continue;
      const auto other = forms_of(spec.categories[j].category);
      for (const auto* list : {&sc.direct_patterns, &sc.synonym_patterns,
                               &sc.negation_patterns}) {
        for (const auto& p : *list) {
          if (!find_mentions(p, other).empty()) {
            throw SpecError(field, "sentence '" + p + "' mentions '" +
                                       spec.categories[j].category.name + "'");
          }
        }
      }
    }
  }
  for (std::size_t f = 0; f < spec.filler.size(); ++f) {
    for (const auto& sc : spec.categories) {
      if (!find_mentions(spec.filler[f], forms_of(sc.category)).empty()) {
        throw SpecError("filler[" + std::to_string(f) + "]",
                        "mentions '" + sc.category.name + "'");
      }
    }
  }
}

SynthSpec synth_spec_from_json(const json& doc) {
  if (!doc.is_object()) throw SpecError("<root>", "expected a JSON object");
  SynthSpec spec;
  if (!doc.contains("categories") || !doc["categories"].is_array()) {
    throw SpecError("categories", "expected a list");
  }
  for (std::size_t i = 0; i < doc["categories"].size(); ++i) {
    const auto& c = doc["categories"][i];
    const std::string field = "categories[" + std::to_string(i) + "]";
    if (!c.is_object()) throw SpecError(field, "expected an object");
    SynthCategory sc;
    if (!c.contains("name") || !c["name"].is_string()) {
      throw SpecError(field + ".name", "missing");
    }
    sc.category.name = c["name"].get<std::string>();
    sc.category.short_name = c.value("short_name", sc.category.name);
    sc.category.index = i;
    if (!c.contains("positive_rate") || !c["positive_rate"].is_number()) {
      throw SpecError(field + ".positive_rate", "missing");
    }
    sc.positive_rate = c["positive_rate"].get<double>();
    sc.negation_rate = c.value("negation_rate", 0.0);
    sc.style = parse_style(c.value("style", std::string("direct")), field + ".style");
    sc.direct_patterns = string_list(c, "direct_patterns", field);
    sc.synonym_patterns = string_list(c, "synonym_patterns", field);
    sc.negation_patterns = string_list(c, "negation_patterns", field);
    spec.categories.push_back(std::move(sc));
  }
  spec.filler = string_list(doc, "filler", "");
  if (doc.contains("size")) {
    if (!doc["size"].is_number_unsigned()) throw SpecError("size", "expected a count");
    spec.size = doc["size"].get<std::size_t>();
  }
  spec.min_filler = doc.value("min_filler", spec.min_filler);
  spec.max_filler = doc.value("max_filler", spec.max_filler);
  spec.id_prefix = doc.value("id_prefix", spec.id_prefix);
  if (doc.contains("date_range")) {
    const auto& range = doc["date_range"];
    if (!range.is_array() || range.size() != 2) {
      throw SpecError("date_range", "expected [first, last]");
    }
    try {
      spec.first_date = parse_date(range[0].get<std::string>());
      spec.last_date = parse_date(range[1].get<std::string>());
    } catch (const std::exception& e) {
      throw SpecError("date_range", e.what());
    }
  }
  validate(spec);
  return spec;
}

ordered_json synth_spec_to_json(const SynthSpec& spec) {
  ordered_json doc;
  doc["size"] = spec.size;
  doc["date_range"] = {format_date(spec.first_date), format_date(spec.last_date)};
  doc["id_prefix"] = spec.id_prefix;
  doc["min_filler"] = spec.min_filler;
  doc["max_filler"] = spec.max_filler;
  doc["categories"] = ordered_json::array();
  for (const auto& sc : spec.categories) {
    ordered_json c;
    c["name"] = sc.category.name;
    if (sc.category.short_name != sc.category.name) {
      c["short_name"] = sc.category.short_name;
    }
    c["positive_rate"] = sc.positive_rate;
    c["style"] = style_name(sc.style);
    c["direct_patterns"] = sc.direct_patterns;
    c["synonym_patterns"] = sc.synonym_patterns;
    c["negation_rate"] = sc.negation_rate;
    c["negation_patterns"] = sc.negation_patterns;
    doc["categories"].push_back(std::move(c));
  }
  doc["filler"] = spec.filler;
  return doc;
}

SynthSpec load_synth_spec(const std::filesystem::path& path) {
  return synth_spec_from_json(read_json_file(path));
}

Corpus generate_synthetic_corpus(const SynthSpec& spec, std::uint64_t seed) {
  validate(spec);
  const std::size_t n = spec.categories.size();
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), 0x5eedu};
  std::mt19937_64 rng(seq);
  auto pick = [&](const std::vector<std::string>& options) -> const std::string& {
    std::uniform_int_distribution<std::size_t> d(0, options.size() - 1);
    return options[d(rng)];
  };
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Exact positive counts per category.
  std::vector<LabelVector> gold(spec.size, LabelVector(n, 0));
  std::vector<std::size_t> order(spec.size);
  for (std::size_t c = 0; c < n; ++c) {
    const auto count = std::min<std::size_t>(
        spec.size, static_cast<std::size_t>(std::llround(
                       spec.categories[c].positive_rate * static_cast<double>(spec.size))));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i < count; ++i) gold[order[i]][c] = 1;
  }

  const long first = std::chrono::sys_days{spec.first_date}.time_since_epoch().count();
  const long last = std::chrono::sys_days{spec.last_date}.time_since_epoch().count();
  std::uniform_int_distribution<long> day(first, last);
  std::uniform_int_distribution<std::size_t> filler_count(spec.min_filler, spec.max_filler);

  struct Draft {
    long day;
    std::string text;
    LabelVector gold;
  };
  std::vector<Draft> drafts;
  drafts.reserve(spec.size);
  for (std::size_t r = 0; r < spec.size; ++r) {
    std::vector<std::string> sentences;
    for (std::size_t c = 0; c < n; ++c) {
      const auto& sc = spec.categories[c];
      if (gold[r][c]) {
        bool synonym = sc.style == PositiveStyle::kSynonym;
        if (sc.style == PositiveStyle::kMixed) {
          const std::size_t total = sc.direct_patterns.size() + sc.synonym_patterns.size();
          std::uniform_int_distribution<std::size_t> d(0, total - 1);
          synonym = d(rng) >= sc.direct_patterns.size();
        }
        sentences.push_back(pick(synonym ? sc.synonym_patterns : sc.direct_patterns));
      } else if (unit(rng) < sc.negation_rate) {
        sentences.push_back(pick(sc.negation_patterns));
      }
    }
    std::vector<std::size_t> fill(spec.filler.size());
    std::iota(fill.begin(), fill.end(), 0);
    std::shuffle(fill.begin(), fill.end(), rng);
    const std::size_t nfill = std::min(filler_count(rng), fill.size());
    for (std::size_t i = 0; i < nfill; ++i) sentences.push_back(spec.filler[fill[i]]);
    if (sentences.empty()) sentences.push_back(spec.filler.front());
    std::shuffle(sentences.begin(), sentences.end(), rng);

    std::string text;
    for (const auto& s : sentences) {
      if (!text.empty()) text.push_back(' ');
      text += s;
    }
    drafts.push_back({day(rng), std::move(text), gold[r]});
  }
  std::stable_sort(drafts.begin(), drafts.end(),
                   [](const Draft& a, const Draft& b) { return a.day < b.day; });

  std::vector<Category> categories;
  for (std::size_t c = 0; c < n; ++c) {
    Category cat = spec.categories[c].category;
    cat.index = c;
    if (cat.short_name.empty()) cat.short_name = cat.name;
    categories.push_back(std::move(cat));
  }
  const std::size_t width = std::max<std::size_t>(4, std::to_string(spec.size).size());
  std::vector<Report> reports;
  reports.reserve(spec.size);
  for (std::size_t i = 0; i < drafts.size(); ++i) {
    std::string id = std::to_string(i);
    if (id.size() < width) id.insert(0, width - id.size(), '0');
    Report r;
    r.id = spec.id_prefix + id;
    r.date = Date{std::chrono::sys_days{std::chrono::days{drafts[i].day}}};
    r.text = std::move(drafts[i].text);
    r.gold = std::move(drafts[i].gold);
    reports.push_back(std::move(r));
  }
  return Corpus(std::move(categories), std::move(reports));
}

}  // namespace radlabel
