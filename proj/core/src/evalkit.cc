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

#include "radlabel/evalkit.h"

#include <cmath>
#include <numeric>

#include "radlabel/error.h"
#include "radlabel/io.h"
#include "radlabel/sampling.h"
#include "radlabel/text.h"

namespace radlabel {

ConfusionCounts confusion(std::span<const LabelVector> preds, std::span<const LabelVector> golds) {
  if (preds.size() != golds.size()) {
    throw Error("prediction count " + std::to_string(preds.size()) + " != gold count " +
                std::to_string(golds.size()));
  }
  const std::size_t n = golds.empty() ? 0 : golds.front().size();
  ConfusionCounts c{std::vector<std::size_t>(n), std::vector<std::size_t>(n),
                    std::vector<std::size_t>(n), std::vector<std::size_t>(n)};
  for (std::size_t r = 0; r < golds.size(); ++r) {
    if (preds[r].size() != n || golds[r].size() != n) {
      throw Error("label width mismatch at row " + std::to_string(r));
    }
    for (std::size_t i = 0; i < n; ++i) {
      const bool p = preds[r][i] != 0, g = golds[r][i] != 0;
      if (p && g) ++c.tp[i];
      else if (p) ++c.fp[i];
      else if (g) ++c.fn[i];
      else ++c.tn[i];
    }
  }
  return c;
}

double f1_percent(std::size_t tp, std::size_t fp, std::size_t fn) {
  const std::size_t denom = 2 * tp + fp + fn;
  if (denom == 0) return 0.0;
  return 100.0 * static_cast<double>(2 * tp) / static_cast<double>(denom);
}

F1Scores f1_scores(std::span<const LabelVector> preds, std::span<const LabelVector> golds) {
  const ConfusionCounts c = confusion(preds, golds);
  F1Scores out;
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < c.tp.size(); ++i) {
    out.per_category.push_back(f1_percent(c.tp[i], c.fp[i], c.fn[i]));
    tp += c.tp[i];
    fp += c.fp[i];
    fn += c.fn[i];
  }
  if (!out.per_category.empty()) {
    out.macro = std::accumulate(out.per_category.begin(), out.per_category.end(), 0.0) /
                static_cast<double>(out.per_category.size());
  }
  out.micro = f1_percent(tp, fp, fn);
  return out;
}

RunResult evaluate(const Labeler& labeler, const Corpus& test, std::uint64_t seed,
                   std::string config_id) {
  RunResult r;
  r.seed = seed;
  r.config_id = std::move(config_id);
  std::vector<LabelVector> golds;
  for (const auto& report : test.reports()) {
    r.predictions.push_back(labeler(report));
    golds.push_back(report.gold);
  }
  r.f1 = f1_scores(r.predictions, golds);
  return r;
}

MetricStat mean_std(std::span<const double> values) {
  MetricStat s;
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

MultiRunSummary multi_run(const SeededRunner& runner, std::span<const std::uint64_t> seeds) {
  if (seeds.empty()) throw Error("multi_run needs at least one seed");
  MultiRunSummary out;
  for (std::uint64_t seed : seeds) {
    try {
      RunResult r = runner(seed);
      r.seed = seed;
      out.runs.push_back(std::move(r));
    } catch (const std::exception& e) {
      out.failures.push_back({seed, e.what()});
    }
  }
  if (out.runs.empty()) {
    throw Error("all " + std::to_string(seeds.size()) + " runs failed; first: " +
                out.failures.front().message);
  }
  const std::size_t n = out.runs.front().f1.per_category.size();
  std::vector<double> col;
  for (std::size_t i = 0; i < n; ++i) {
    col.clear();
    for (const auto& r : out.runs) col.push_back(r.f1.per_category.at(i));
    out.per_category.push_back(mean_std(col));
  }
  col.clear();
  for (const auto& r : out.runs) col.push_back(r.f1.macro);
  out.macro = mean_std(col);
  col.clear();
  for (const auto& r : out.runs) col.push_back(r.f1.micro);
  out.micro = mean_std(col);
  return out;
}

std::vector<std::uint64_t> default_seeds(std::size_t k, std::uint64_t base) {
  const std::size_t count = k == 8 ? 10 : 5;
  std::vector<std::uint64_t> seeds(count);
  std::iota(seeds.begin(), seeds.end(), base);
  return seeds;
}

std::vector<std::string> default_negation_exclusions() {
  return {"Cyst", "Post-Treatment", "Steatosis", "Hemangioma"};
}

std::vector<NegationCase> extract_negation_cases(const Corpus& test,
                                                 const MentionLexicon& lexicon,
                                                 std::span<const std::string> excluded) {
  const auto& cats = test.categories();
  if (lexicon.forms.size() != cats.size()) throw Error("lexicon does not match the label space");
  std::vector<bool> skip(cats.size(), false);
  for (const auto& name : excluded) {
    for (const auto& c : cats) {
      if (c.matches(name)) skip[c.index] = true;
    }
  }
  std::vector<NegationCase> out;
  for (const auto& report : test.reports()) {
    for (std::size_t i = 0; i < cats.size(); ++i) {
      if (skip[i] || report.gold[i] != 0) continue;
      const auto mentions = find_mentions(report.text, lexicon.forms[i]);
      if (mentions.empty()) continue;
      out.push_back({report.id, i, mentions.front().form, mentions.front().offset});
    }
  }
  return out;
}

double NegationAccuracy::accuracy(std::size_t category) const {
  if (category >= cases.size() || cases[category] == 0) return 0.0;
  return static_cast<double>(correct[category]) / static_cast<double>(cases[category]);
}

double NegationAccuracy::overall() const {
  if (total_cases == 0) return 0.0;
  return static_cast<double>(total_correct) / static_cast<double>(total_cases);
}

NegationAccuracy negation_accuracy(const Labeler& labeler, std::span<const NegationCase> cases,
                                   const Corpus& corpus) {
  NegationAccuracy acc;
  acc.cases.assign(corpus.category_count(), 0);
  acc.correct.assign(corpus.category_count(), 0);
  // Cases of one report are adjacent when produced by extract_negation_cases;
  // reuse the last prediction.
  const Report* last = nullptr;
  LabelVector pred;
  for (const auto& c : cases) {
    const Report* report = corpus.find_report(c.report_id);
    if (report == nullptr) throw Error("negation case references unknown report '" + c.report_id + "'");
    if (c.category >= corpus.category_count()) throw Error("negation case category out of range");
    if (report != last) {
      pred = labeler(*report);
      last = report;
    }
    ++acc.cases[c.category];
    ++acc.total_cases;
    if (pred.at(c.category) == 0) {
      ++acc.correct[c.category];
      ++acc.total_correct;
    }
  }
  return acc;
}

std::vector<std::size_t> default_sweep_sizes(std::size_t pool_size) {
  std::vector<std::size_t> out;
  for (std::size_t k : {8, 16, 32, 64, 128}) {
    if (k < pool_size) out.push_back(k);
  }
  if (pool_size > 0) out.push_back(pool_size);
  return out;
}

std::vector<SweepPoint> size_sweep(const KShotRunner& runner, std::span<const std::size_t> k_values,
                                   const Corpus& pool, const SeedPolicy& seeds) {
  std::vector<SweepPoint> out;
  for (std::size_t k : k_values) {
    if (k == 0 || k > pool.size()) {
      throw Error("sweep size " + std::to_string(k) + " outside [1, " +
                  std::to_string(pool.size()) + "]");
    }
    const auto seed_list = seeds ? seeds(k) : default_seeds(k);
    SweepPoint point;
    point.k = k;
    point.full = k == pool.size();
    point.summary = multi_run(
        [&](std::uint64_t seed) {
          const KShotSample s = stratified_kshot(pool, k, seed);
          RunResult r = runner(s.sample, seed);
          r.config_id = "k=" + std::to_string(k);
          return r;
        },
        seed_list);
    out.push_back(std::move(point));
  }
  return out;
}

std::string results_csv(std::span<const RunResult> runs, const std::vector<Category>& categories) {
  std::vector<std::string> header{"seed", "config"};
  for (const auto& c : categories) header.push_back(c.short_name);
  header.push_back("macro");
  header.push_back("micro");
  std::string out = csv_row(header);
  for (const auto& r : runs) {
    std::vector<std::string> row{std::to_string(r.seed), r.config_id};
    for (double v : r.f1.per_category) row.push_back(format_double(v));
    row.push_back(format_double(r.f1.macro));
    row.push_back(format_double(r.f1.micro));
    out += csv_row(row);
  }
  return out;
}

nlohmann::ordered_json summary_json(const MultiRunSummary& summary,
                                    const std::vector<Category>& categories) {
  auto stat = [](const MetricStat& s) {
    return nlohmann::ordered_json{{"mean", s.mean}, {"std", s.stddev}};
  };
  nlohmann::ordered_json doc;
  doc["runs"] = summary.runs.size();
  doc["seeds"] = nlohmann::ordered_json::array();
  for (const auto& r : summary.runs) doc["seeds"].push_back(r.seed);
  doc["failures"] = nlohmann::ordered_json::array();
  for (const auto& f : summary.failures) {
    doc["failures"].push_back({{"seed", f.seed}, {"message", f.message}});
  }
  doc["macro"] = stat(summary.macro);
  doc["micro"] = stat(summary.micro);
  nlohmann::ordered_json per = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < summary.per_category.size() && i < categories.size(); ++i) {
    per[categories[i].short_name] = stat(summary.per_category[i]);
  }
  doc["per_category"] = per;
  return doc;
}

std::string sweep_csv(std::span<const SweepPoint> points) {
  std::string out = csv_row({"k", "full", "runs", "failures", "macro_mean", "macro_std",
                             "micro_mean", "micro_std"});
  for (const auto& p : points) {
    out += csv_row({std::to_string(p.k), p.full ? "1" : "0", std::to_string(p.summary.runs.size()),
                    std::to_string(p.summary.failures.size()), format_double(p.summary.macro.mean),
                    format_double(p.summary.macro.stddev), format_double(p.summary.micro.mean),
                    format_double(p.summary.micro.stddev)});
  }
  return out;
}

std::string negation_csv(const std::vector<Category>& categories,
                         const std::vector<std::pair<std::string, NegationAccuracy>>& labelers) {
  std::vector<std::string> header{"category", "cases"};
  for (const auto& [name, acc] : labelers) header.push_back(name);
  std::string out = csv_row(header);
  if (labelers.empty()) return out;
  const NegationAccuracy& ref = labelers.front().second;
  for (const auto& c : categories) {
    if (c.index >= ref.cases.size() || ref.cases[c.index] == 0) continue;
    std::vector<std::string> row{c.short_name, std::to_string(ref.cases[c.index])};
    for (const auto& [name, acc] : labelers) row.push_back(format_double(acc.accuracy(c.index)));
    out += csv_row(row);
  }
  std::vector<std::string> total{"All", std::to_string(ref.total_cases)};
  for (const auto& [name, acc] : labelers) total.push_back(format_double(acc.overall()));
  out += csv_row(total);
  return out;
}

}  // namespace radlabel
