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

#ifndef RADLABEL_EVALKIT_H_
#define RADLABEL_EVALKIT_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "radlabel/baselines.h"
#include "radlabel/corpus.h"

namespace radlabel {

struct ConfusionCounts {
  std::vector<std::size_t> tp, fp, fn, tn;  // per category
};

// Throws Error on shape mismatch.
ConfusionCounts confusion(std::span<const LabelVector> preds, std::span<const LabelVector> golds);

// 100 * 2TP / (2TP + FP + FN); 0 when the denominator is 0.
double f1_percent(std::size_t tp, std::size_t fp, std::size_t fn);

struct F1Scores {
  std::vector<double> per_category;  // percent
  double macro = 0.0;
  double micro = 0.0;
};

F1Scores f1_scores(std::span<const LabelVector> preds, std::span<const LabelVector> golds);

using Labeler = std::function<LabelVector(const Report&)>;

struct RunResult {
  std::uint64_t seed = 0;
  std::string config_id;
  F1Scores f1;
  std::vector<LabelVector> predictions;
};

RunResult evaluate(const Labeler& labeler, const Corpus& test, std::uint64_t seed = 0,
                   std::string config_id = {});

struct MetricStat {
  double mean = 0.0;
  double stddev = 0.0;  // n-1 denominator; 0 for a single value
};

MetricStat mean_std(std::span<const double> values);

struct RunFailure {
  std::uint64_t seed = 0;
  std::string message;
};

struct MultiRunSummary {
  std::vector<RunResult> runs;  // successful runs, in seed order
  std::vector<RunFailure> failures;
  std::vector<MetricStat> per_category;
  MetricStat macro;
  MetricStat micro;
};

using SeededRunner = std::function<RunResult(std::uint64_t seed)>;

// Runs every seed; a throwing runner is recorded as a failure. Throws Error
// when no seed succeeds.
MultiRunSummary multi_run(const SeededRunner& runner, std::span<const std::uint64_t> seeds);

// 10 seeds for K = 8, 5 otherwise, counting up from `base`.
std::vector<std::uint64_t> default_seeds(std::size_t k, std::uint64_t base = 0);

struct NegationCase {
  std::string report_id;
  std::size_t category = 0;
  std::string form;  // matched surface form
  std::size_t offset = 0;
};

// Cyst, Post-Treatment, Steatosis, Hemangioma.
std::vector<std::string> default_negation_exclusions();

// Every (report, category) pair where label_match fires but gold is 0.
// Excluded names are matched against category names and short names.
std::vector<NegationCase> extract_negation_cases(const Corpus& test,
                                                 const MentionLexicon& lexicon,
                                                 std::span<const std::string> excluded);

struct NegationAccuracy {
  std::vector<std::size_t> cases;    // per category
  std::vector<std::size_t> correct;  // labeler predicted 0
  std::size_t total_cases = 0;
  std::size_t total_correct = 0;

  double accuracy(std::size_t category) const;
  double overall() const;
};

// Throws Error when a case names a report missing from `corpus`.
NegationAccuracy negation_accuracy(const Labeler& labeler, std::span<const NegationCase> cases,
                                   const Corpus& corpus);

using KShotRunner = std::function<RunResult(const Corpus& train, std::uint64_t seed)>;
using SeedPolicy = std::function<std::vector<std::uint64_t>(std::size_t k)>;

struct SweepPoint {
  std::size_t k = 0;
  bool full = false;  // k equals the pool size
  MultiRunSummary summary;
};

// 8, 16, 32, 64, 128 (those below the pool size) and the whole pool.
std::vector<std::size_t> default_sweep_sizes(std::size_t pool_size);

// For each K and seed: stratified sample, then runner. With no policy,
// default_seeds(k) is used.
std::vector<SweepPoint> size_sweep(const KShotRunner& runner, std::span<const std::size_t> k_values,
                                   const Corpus& pool, const SeedPolicy& seeds = {});

// One row per run: seed, config, per-category F1, macro, micro.
std::string results_csv(std::span<const RunResult> runs, const std::vector<Category>& categories);

nlohmann::ordered_json summary_json(const MultiRunSummary& summary,
                                    const std::vector<Category>& categories);

// k, full, runs, failures, macro_mean, macro_std, micro_mean, micro_std.
std::string sweep_csv(std::span<const SweepPoint> points);

// category, cases, then one accuracy column per labeler; categories without
// cases are omitted and an "All" row closes the table.
std::string negation_csv(const std::vector<Category>& categories,
                         const std::vector<std::pair<std::string, NegationAccuracy>>& labelers);

}  // namespace radlabel

#endif  // RADLABEL_EVALKIT_H_
