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

#include "radlabel/labeler.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>

#include "radlabel/error.h"
#include "radlabel/evalkit.h"
#include "radlabel/io.h"
#include "radlabel/optimizer.h"

namespace radlabel {

namespace {

constexpr double kProbEps = 1e-12;

std::vector<double> json_doubles(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) return {};
  if (!doc[key].is_array()) throw SpecError(key, "expected a list of numbers");
  std::vector<double> out;
  for (const auto& v : doc[key]) {
    if (!v.is_number()) throw SpecError(key, "expected a list of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

void validate(const TrainConfig& config) {
  if (!(config.learning_rate >= 0.0) || !std::isfinite(config.learning_rate)) {
    throw SpecError("learning_rate", "must be a finite value >= 0");
  }
  if (config.batch_size < 1) throw SpecError("batch_size", "must be >= 1");
  if (!(config.warmup_ratio >= 0.0 && config.warmup_ratio <= 1.0)) {
    throw SpecError("warmup_ratio", "must be in [0,1]");
  }
  if (config.epochs < 1) throw SpecError("epochs", "must be >= 1");
  if (!(config.weight_decay >= 0.0)) throw SpecError("weight_decay", "must be >= 0");
}

nlohmann::ordered_json train_config_to_json(const TrainConfig& config) {
  return {{"learning_rate", config.learning_rate}, {"batch_size", config.batch_size},
          {"warmup_ratio", config.warmup_ratio},   {"epochs", config.epochs},
          {"seed", config.seed},                   {"weight_decay", config.weight_decay}};
}

TrainConfig train_config_from_json(const nlohmann::json& doc) {
  TrainConfig c;
  try {
    c.learning_rate = doc.value("learning_rate", c.learning_rate);
    c.batch_size = doc.value("batch_size", c.batch_size);
    c.warmup_ratio = doc.value("warmup_ratio", c.warmup_ratio);
    c.epochs = doc.value("epochs", c.epochs);
    c.seed = doc.value("seed", c.seed);
    c.weight_decay = doc.value("weight_decay", c.weight_decay);
  } catch (const nlohmann::json::exception& e) {
    throw SpecError("config", e.what());
  }
  validate(c);
  return c;
}

GridSpec GridSpec::encoder_default() {
  GridSpec g;
  g.learning_rates = {2e-5, 3e-5, 5e-5};
  g.batch_sizes = {2, 4, 8};
  g.warmup_ratios = {0.0, 0.1};
  g.taus = {0.2, 0.3, 0.4, 0.5};
  return g;
}

void validate(const GridSpec& grid) {
  if (grid.learning_rates.empty()) throw SpecError("learning_rates", "must not be empty");
  if (grid.batch_sizes.empty()) throw SpecError("batch_sizes", "must not be empty");
  if (grid.warmup_ratios.empty()) throw SpecError("warmup_ratios", "must not be empty");
  if (grid.taus.empty()) throw SpecError("taus", "must not be empty");
  for (double t : grid.taus) {
    if (!(t > 0.0 && t < 1.0)) throw SpecError("taus", "every tau must be in (0,1)");
  }
  if (grid.epochs < 1) throw SpecError("epochs", "must be >= 1");
}

nlohmann::ordered_json grid_to_json(const GridSpec& grid) {
  return {{"learning_rates", grid.learning_rates}, {"batch_sizes", grid.batch_sizes},
          {"warmup_ratios", grid.warmup_ratios},   {"taus", grid.taus},
          {"epochs", grid.epochs},                 {"weight_decay", grid.weight_decay}};
}

GridSpec grid_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw SpecError("grid", "expected a JSON object");
  GridSpec g = GridSpec::encoder_default();
  if (doc.contains("learning_rates")) g.learning_rates = json_doubles(doc, "learning_rates");
  if (doc.contains("warmup_ratios")) g.warmup_ratios = json_doubles(doc, "warmup_ratios");
  if (doc.contains("taus")) g.taus = json_doubles(doc, "taus");
  if (doc.contains("batch_sizes")) {
    g.batch_sizes.clear();
    for (double b : json_doubles(doc, "batch_sizes")) {
      if (b < 1 || b != std::floor(b)) throw SpecError("batch_sizes", "must be positive integers");
      g.batch_sizes.push_back(static_cast<std::size_t>(b));
    }
  }
  if (doc.contains("epochs")) g.epochs = doc["epochs"].get<std::size_t>();
  if (doc.contains("weight_decay")) g.weight_decay = doc["weight_decay"].get<double>();
  validate(g);
  return g;
}

GridSpec load_grid(const std::filesystem::path& path) {
  return grid_from_json(read_json_file(path));
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

PromptRadModel::PromptRadModel(std::unique_ptr<MaskedTokenScorer> scorer, Template tmpl,
                               Verbalizer verbalizer, double tau)
    : scorer_(std::move(scorer)), template_(std::move(tmpl)), verbalizer_(std::move(verbalizer)) {
  if (!scorer_) throw Error("model needs a scorer");
  validate(template_);
  set_tau(tau);
  rebuild();
}

PromptRadModel::PromptRadModel(const PromptRadModel& other)
    : scorer_(other.scorer_->clone()),
      template_(other.template_),
      verbalizer_(other.verbalizer_),
      matrix_(other.matrix_),
      ids_(other.ids_),
      compact_(other.compact_),
      tau_(other.tau_) {}

PromptRadModel& PromptRadModel::operator=(const PromptRadModel& other) {
  if (this != &other) *this = PromptRadModel(other);
  return *this;
}

void PromptRadModel::set_tau(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw SpecError("tau", "must be in (0,1)");
  tau_ = tau;
}

void PromptRadModel::rebuild() {
  matrix_ = build_matrix(verbalizer_, scorer_->vocab());
  ids_ = matrix_.distinct_ids();
  compact_ = matrix_;
  for (std::size_t k = 0; k < compact_.token_ids.size(); ++k) {
    if (!compact_.valid[k]) continue;
    const auto it = std::lower_bound(ids_.begin(), ids_.end(), matrix_.token_ids[k]);
    compact_.token_ids[k] = static_cast<TokenId>(it - ids_.begin());
  }
}

EncodedInput PromptRadModel::encode(std::string_view text) const {
  return render(template_, text, scorer_->vocab(), scorer_->max_length());
}

std::vector<double> PromptRadModel::mapped_logits(const EncodedInput& input) const {
  return scorer_->forward_ids(input.tokens, input.mask_pos, ids_);
}

std::vector<double> PromptRadModel::category_logits(std::span<const double> mapped) const {
  return category_scores(mapped, compact_);
}

std::vector<double> PromptRadModel::category_logits(const EncodedInput& input) const {
  return category_logits(mapped_logits(input));
}

void PromptRadModel::backward(const EncodedInput& input, std::span<const double> mapped,
                              std::span<const double> dz, std::span<double> grad) const {
  if (dz.size() != matrix_.rows) throw Error("dz has the wrong length");
  if (mapped.size() != ids_.size()) throw Error("mapped logits have the wrong length");
  const auto arg = category_argmax(mapped, compact_);
  std::vector<double> dlogits(ids_.size(), 0.0);
  for (std::size_t i = 0; i < matrix_.rows; ++i) {
    dlogits[static_cast<std::size_t>(compact_.id(i, arg[i]))] += dz[i];
  }
  scorer_->backward(input.tokens, input.mask_pos, ids_, dlogits, grad);
}

std::vector<double> predict_proba(const PromptRadModel& model, std::string_view text) {
  auto z = model.category_logits(model.encode(text));
  for (double& v : z) v = sigmoid(v);
  return z;
}

std::vector<double> predict_proba(const PromptRadModel& model, const Report& report) {
  return predict_proba(model, report.text);
}

LabelVector threshold(std::span<const double> probabilities, double tau) {
  LabelVector out(probabilities.size(), 0);
  for (std::size_t i = 0; i < probabilities.size(); ++i) out[i] = probabilities[i] > tau ? 1 : 0;
  return out;
}

LabelVector predict(const PromptRadModel& model, const Report& report) {
  return threshold(predict_proba(model, report), model.tau());
}

BceResult bce_loss(std::span<const double> probabilities, const LabelVector& gold) {
  if (probabilities.size() != gold.size()) throw Error("bce_loss: length mismatch");
  if (gold.empty()) throw Error("bce_loss: empty label vector");
  BceResult r;
  double sum = 0.0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    double p = probabilities[i];
    if (p < kProbEps) {
      p = kProbEps;
      r.clamped = true;
    } else if (p > 1.0 - kProbEps) {
      p = 1.0 - kProbEps;
      r.clamped = true;
    }
    sum += gold[i] ? std::log(p) : std::log1p(-p);
  }
  r.loss = -sum / static_cast<double>(gold.size());
  return r;
}

TrainResult train(PromptRadModel& model, const Corpus& train_set, const TrainConfig& config) {
  validate(config);
  if (train_set.empty()) throw Error("training set is empty");
  if (train_set.category_count() != model.category_count()) {
    throw Error("training set has " + std::to_string(train_set.category_count()) +
                " categories, model has " + std::to_string(model.category_count()));
  }
  const std::size_t n_examples = train_set.size();
  const std::size_t n_cat = model.category_count();
  std::vector<EncodedInput> inputs;
  inputs.reserve(n_examples);
  for (const auto& r : train_set.reports()) inputs.push_back(model.encode(r.text));

  MaskedTokenScorer& scorer = model.mutable_scorer();
  auto params = scorer.parameters();
  AdamW optimizer(params.size(), AdamWConfig{0.9, 0.999, 1e-8, config.weight_decay});
  std::vector<double> grad(params.size(), 0.0);

  const std::size_t batch = std::min(config.batch_size, n_examples);
  const std::size_t steps_per_epoch = (n_examples + batch - 1) / batch;
  const std::size_t total_steps = steps_per_epoch * config.epochs;
  const auto warmup_steps = static_cast<std::size_t>(
      std::llround(config.warmup_ratio * static_cast<double>(total_steps)));

  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> order(n_examples);
  std::iota(order.begin(), order.end(), 0);

  TrainResult result;
  std::vector<double> dz(n_cat);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_sum = 0.0;
    for (std::size_t start = 0; start < n_examples; start += batch) {
      const std::size_t end = std::min(start + batch, n_examples);
      const double inv_batch = 1.0 / static_cast<double>(end - start);
      std::fill(grad.begin(), grad.end(), 0.0);
      double batch_sum = 0.0;
      for (std::size_t k = start; k < end; ++k) {
        const std::size_t ex = order[k];
        const LabelVector& y = train_set.reports()[ex].gold;
        const std::vector<double> mapped = model.mapped_logits(inputs[ex]);
        const std::vector<double> z = model.category_logits(mapped);
        std::vector<double> p(n_cat);
        for (std::size_t i = 0; i < n_cat; ++i) {
          p[i] = sigmoid(z[i]);
          dz[i] = (p[i] - static_cast<double>(y[i])) / static_cast<double>(n_cat) * inv_batch;
        }
        const double loss = bce_loss(p, y).loss;
        if (!std::isfinite(loss)) {
          throw TrainingError(result.steps, "non-finite loss on example '" +
                                                train_set.reports()[ex].id + "'");
        }
        batch_sum += loss;
        model.backward(inputs[ex], mapped, dz, grad);
      }
      const double step_lr =
          (warmup_steps > 0 && result.steps < warmup_steps)
              ? config.learning_rate * static_cast<double>(result.steps + 1) /
                    static_cast<double>(warmup_steps)
              : config.learning_rate;
      optimizer.step(params, grad, step_lr);
      result.step_losses.push_back(batch_sum * inv_batch);
      epoch_sum += batch_sum;
      ++result.steps;
    }
    result.epoch_losses.push_back(epoch_sum / static_cast<double>(n_examples));
  }
  return result;
}

std::vector<TauScore> score_taus(std::span<const std::vector<double>> probabilities,
                                 const Corpus& corpus, std::span<const double> taus) {
  if (probabilities.size() != corpus.size()) throw Error("probability rows != corpus size");
  std::vector<LabelVector> golds;
  for (const auto& r : corpus.reports()) golds.push_back(r.gold);
  std::vector<TauScore> out;
  for (double tau : taus) {
    std::vector<LabelVector> preds;
    for (const auto& p : probabilities) preds.push_back(threshold(p, tau));
    out.push_back({tau, f1_scores(preds, golds).macro});
  }
  return out;
}

GridResult grid_search(const Corpus& train_set, const GridSpec& grid, const ModelFactory& factory,
                       std::uint64_t seed) {
  validate(grid);
  std::vector<GridRun> runs;
  std::optional<PromptRadModel> best_model;
  TrainResult best_trace;
  std::size_t best_index = 0;
  for (double lr : grid.learning_rates) {
    for (std::size_t b : grid.batch_sizes) {
      for (double w : grid.warmup_ratios) {
        GridRun run;
        run.config = TrainConfig{lr, b, w, grid.epochs, seed, grid.weight_decay};
        try {
          PromptRadModel model = factory();
          TrainResult trace = train(model, train_set, run.config);
          run.final_loss = trace.final_loss();
          run.ok = std::isfinite(run.final_loss);
          if (!run.ok) run.error = "non-finite final loss";
          if (run.ok && (!best_model || run.final_loss < runs[best_index].final_loss)) {
            best_model.emplace(std::move(model));
            best_trace = std::move(trace);
            best_index = runs.size();
          }
        } catch (const std::exception& e) {
          run.error = e.what();
        }
        runs.push_back(std::move(run));
      }
    }
  }
  if (!best_model) {
    throw Error("all " + std::to_string(runs.size()) + " grid runs failed; first: " +
                runs.front().error);
  }

  std::vector<std::vector<double>> probs;
  for (const auto& r : train_set.reports()) probs.push_back(predict_proba(*best_model, r));
  auto taus = score_taus(probs, train_set, grid.taus);
  std::size_t best_tau = 0;
  for (std::size_t i = 1; i < taus.size(); ++i) {
    if (taus[i].macro_f1 > taus[best_tau].macro_f1) best_tau = i;
  }
  best_model->set_tau(taus[best_tau].tau);
  return GridResult{runs[best_index].config, taus[best_tau].tau, std::move(*best_model),
                    std::move(best_trace),   std::move(runs),    std::move(taus)};
}

std::string loss_trace_csv(const TrainResult& trace) {
  std::string out = csv_row({"step", "loss"});
  for (std::size_t i = 0; i < trace.step_losses.size(); ++i) {
    out += csv_row({std::to_string(i), format_double(trace.step_losses[i])});
  }
  return out;
}

void save_bundle(const std::filesystem::path& dir, const PromptRadModel& model,
                 const BundleManifest& manifest, const TrainResult* trace) {
  std::filesystem::create_directories(dir);
  save_scorer(dir / "scorer.json", model.scorer());
  save_template(dir / "template.json", model.prompt());
  write_json_file(dir / "verbalizer.json", verbalizer_to_json(model.verbalizer()));
  if (trace != nullptr) write_file_atomic(dir / "loss_trace.csv", loss_trace_csv(*trace));
  nlohmann::ordered_json doc;
  doc["tau"] = model.tau();
  doc["config"] = train_config_to_json(manifest.config);
  doc["seed"] = manifest.seed;
  doc["parameters_sha256"] = sha256_hex(model.scorer().parameters());
  doc["categories"] = manifest.categories;
  for (const auto& [k, v] : manifest.extra.items()) doc[k] = v;
  write_json_file(dir / "manifest.json", doc);
}

LoadedBundle load_bundle(const std::filesystem::path& dir,
                         const std::vector<Category>* label_space) {
  if (!std::filesystem::is_directory(dir)) throw Error("no model bundle at " + dir.string());
  const auto doc = read_json_file(dir / "manifest.json");
  BundleManifest manifest;
  try {
    manifest.tau = doc.at("tau").get<double>();
    manifest.config = train_config_from_json(doc.at("config"));
    manifest.seed = doc.at("seed").get<std::uint64_t>();
    manifest.parameters_sha256 = doc.value("parameters_sha256", std::string());
    manifest.categories = doc.value("categories", std::vector<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw FormatError((dir / "manifest.json").string(), 0, e.what());
  }
  for (const auto& [k, v] : doc.items()) {
    if (k != "tau" && k != "config" && k != "seed" && k != "parameters_sha256" &&
        k != "categories") {
      manifest.extra[k] = v;
    }
  }
  auto scorer = load_scorer(dir / "scorer.json");
  if (!manifest.parameters_sha256.empty() &&
      sha256_hex(scorer->parameters()) != manifest.parameters_sha256) {
    throw Error("scorer parameters do not match the manifest digest in " + dir.string());
  }
  Template tmpl = load_template(dir / "template.json");
  const auto vdoc = read_json_file(dir / "verbalizer.json");
  Verbalizer verbalizer =
      verbalizer_from_json(vdoc, parse_verbalizer_mode(vdoc.value("mode", std::string("multi"))));
  if (label_space != nullptr) verbalizer = align(verbalizer, *label_space);
  return {PromptRadModel(std::move(scorer), std::move(tmpl), std::move(verbalizer), manifest.tau),
          std::move(manifest)};
}

}  // namespace radlabel
