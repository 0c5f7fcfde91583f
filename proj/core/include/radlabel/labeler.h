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

#ifndef RADLABEL_LABELER_H_
#define RADLABEL_LABELER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radlabel/corpus.h"
#include "radlabel/scorer.h"
#include "radlabel/templates.h"
#include "radlabel/verbalizer.h"

namespace radlabel {

// Defaults are sized for the toy scorer.
struct TrainConfig {
  double learning_rate = 1.5e-3;
  std::size_t batch_size = 4;
  double warmup_ratio = 0.1;
  std::size_t epochs = 20;
  std::uint64_t seed = 0;
  double weight_decay = 0.01;
};

void validate(const TrainConfig& config);
nlohmann::ordered_json train_config_to_json(const TrainConfig& config);
// Missing keys keep their defaults.
TrainConfig train_config_from_json(const nlohmann::json& doc);

struct GridSpec {
  std::vector<double> learning_rates;
  std::vector<std::size_t> batch_sizes;
  std::vector<double> warmup_ratios;
  std::vector<double> taus;
  std::size_t epochs = 20;
  double weight_decay = 0.01;

  // Grid for a pretrained transformer encoder: lr {2e-5, 3e-5, 5e-5},
  // batch {2, 4, 8}, warmup {0, 0.1}, tau {0.2, 0.3, 0.4, 0.5}.
  static GridSpec encoder_default();
};

void validate(const GridSpec& grid);
nlohmann::ordered_json grid_to_json(const GridSpec& grid);
GridSpec grid_from_json(const nlohmann::json& doc);
GridSpec load_grid(const std::filesystem::path& path);

double sigmoid(double z);

// Masked-token scorer + template + verbalizer matrix + shared threshold.
class PromptRadModel {
 public:
  // `verbalizer` must already be aligned to the label space. Throws SpecError
  // when tau is outside (0,1) or a verbalizer word is missing from the
  // scorer's vocabulary.
  PromptRadModel(std::unique_ptr<MaskedTokenScorer> scorer, Template tmpl, Verbalizer verbalizer,
                 double tau = 0.5);
  PromptRadModel(const PromptRadModel& other);
  PromptRadModel& operator=(const PromptRadModel& other);
  PromptRadModel(PromptRadModel&&) noexcept = default;
  PromptRadModel& operator=(PromptRadModel&&) noexcept = default;

  const MaskedTokenScorer& scorer() const { return *scorer_; }
  MaskedTokenScorer& mutable_scorer() { return *scorer_; }
  const Template& prompt() const { return template_; }
  const Verbalizer& verbalizer() const { return verbalizer_; }
  const MappingMatrix& matrix() const { return matrix_; }
  std::size_t category_count() const { return matrix_.rows; }
  double tau() const { return tau_; }
  void set_tau(double tau);

  EncodedInput encode(std::string_view text) const;

  // Mask logits of the distinct mapped words (see mapped_ids()).
  std::vector<double> mapped_logits(const EncodedInput& input) const;
  // Category scores z (max over each row's valid words).
  std::vector<double> category_logits(const EncodedInput& input) const;
  std::vector<double> category_logits(std::span<const double> mapped) const;

  // Adds dL/dz, routed through each category's argmax word, into `grad`.
  // `mapped` must come from mapped_logits(input).
  void backward(const EncodedInput& input, std::span<const double> mapped,
                std::span<const double> dz, std::span<double> grad) const;

  const std::vector<TokenId>& mapped_ids() const { return ids_; }

 private:
  void rebuild();

  std::unique_ptr<MaskedTokenScorer> scorer_;
  Template template_;
  Verbalizer verbalizer_;
  MappingMatrix matrix_;
  // Distinct mapped ids and the matrix re-indexed into them.
  std::vector<TokenId> ids_;
  MappingMatrix compact_;
  double tau_ = 0.5;
};

std::vector<double> predict_proba(const PromptRadModel& model, const Report& report);
std::vector<double> predict_proba(const PromptRadModel& model, std::string_view text);
// label[i] = 1 iff p[i] > tau.
LabelVector threshold(std::span<const double> probabilities, double tau);
LabelVector predict(const PromptRadModel& model, const Report& report);

struct BceResult {
  double loss = 0.0;
  bool clamped = false;  // some probability was clamped to [1e-12, 1 - 1e-12]
};

// Mean binary cross-entropy over categories.
BceResult bce_loss(std::span<const double> probabilities, const LabelVector& gold);

struct TrainResult {
  std::vector<double> step_losses;   // mean batch loss per optimizer step
  std::vector<double> epoch_losses;  // mean example loss per epoch
  std::size_t steps = 0;

  double final_loss() const { return epoch_losses.empty() ? 0.0 : epoch_losses.back(); }
};

// AdamW over seeded mini-batches; linear warmup then constant rate. Loss is
// averaged over categories and over the batch. Throws TrainingError on a
// non-finite loss.
TrainResult train(PromptRadModel& model, const Corpus& train_set, const TrainConfig& config);

struct GridRun {
  TrainConfig config;
  bool ok = false;
  double final_loss = 0.0;
  std::string error;
};

struct TauScore {
  double tau = 0.0;
  double macro_f1 = 0.0;
};

struct GridResult {
  TrainConfig best;
  double tau = 0.5;
  PromptRadModel model;
  TrainResult trace;
  std::vector<GridRun> runs;
  std::vector<TauScore> tau_scores;
};

using ModelFactory = std::function<PromptRadModel()>;

// Trains one model per (lr, batch, warmup) tuple with `seed`, keeps the
// lowest final training loss (ties: first in grid order), then picks tau by
// training-set macro F1 (ties: first in grid order). Throws Error when every
// run fails.
GridResult grid_search(const Corpus& train_set, const GridSpec& grid, const ModelFactory& factory,
                       std::uint64_t seed);

// Training-set macro F1 for each tau on precomputed probabilities.
std::vector<TauScore> score_taus(std::span<const std::vector<double>> probabilities,
                                 const Corpus& corpus, std::span<const double> taus);

// Directory with scorer.json, template.json, verbalizer.json,
// loss_trace.csv and manifest.json.
struct BundleManifest {
  double tau = 0.5;
  TrainConfig config;
  std::uint64_t seed = 0;
  std::string parameters_sha256;
  std::vector<std::string> categories;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

void save_bundle(const std::filesystem::path& dir, const PromptRadModel& model,
                 const BundleManifest& manifest, const TrainResult* trace = nullptr);

struct LoadedBundle {
  PromptRadModel model;
  BundleManifest manifest;
};

// Re-aligns the verbalizer to `label_space` when given.
LoadedBundle load_bundle(const std::filesystem::path& dir,
                         const std::vector<Category>* label_space = nullptr);

std::string loss_trace_csv(const TrainResult& trace);

}  // namespace radlabel

#endif  // RADLABEL_LABELER_H_
