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

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "radlabel/baselines.h"
#include "radlabel/corpus.h"
#include "radlabel/error.h"
#include "radlabel/evalkit.h"
#include "radlabel/io.h"
#include "radlabel/labeler.h"
#include "radlabel/llm.h"
#include "radlabel/pipeline.h"
#include "radlabel/pretraining.h"
#include "radlabel/sampling.h"
#include "radlabel/synth.h"
#include "radlabel/template_generation.h"
#include "radlabel/template_selection.h"
#include "radlabel/templates.h"
#include "radlabel/toy_mlm.h"
#include "radlabel/verbalizer.h"

namespace radlabel::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& s, const std::string& flag) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(s)) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || v == 0) {
      throw UsageError(flag + ": '" + item + "' is not a positive integer");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

// key = value lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty()) {
      throw UsageError(path.string() + ":" + std::to_string(n) + ": expected key = value");
    }
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

std::string digest(const fs::path& path) {
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::string listing;
    for (const auto& f : files) listing += f.filename().string() + " " + file_sha256(f) + "\n";
    return sha256_hex(listing);
  }
  return file_sha256(path);
}

// Collects everything needed to rerun a command and writes it as JSON.
class RunRecorder {
 public:
  RunRecorder(std::string command, const CLI::App& sub)
      : command_(std::move(command)), started_(utc_now()) {
    config_ = json::object();
    args_ = json::array();
    for (const CLI::Option* opt : sub.get_options()) {
      const std::string name = opt->get_lnames().empty() ? "" : opt->get_lnames().front();
      if (name.empty() || name == "help") continue;
      std::string value;
      if (opt->count() > 0) {
        value = opt->results().back();
      } else {
        value = opt->get_default_str();
      }
      config_[name] = value;
      if (!value.empty()) args_.push_back("--" + name + "=" + value);
    }
  }

  void input(const fs::path& path) { inputs_[path.string()] = digest(path); }
  void output(const fs::path& path) { outputs_.push_back(path); }
  void seed(const std::string& name, std::uint64_t value) { seeds_[name] = value; }
  json& extra() { return extra_; }

  // Fails when a declared output is missing.
  void write(const fs::path& path) {
    for (const auto& p : outputs_) {
      if (!fs::exists(p)) throw Error("output was not written: " + p.string());
    }
    json doc;
    doc["command"] = command_;
    doc["tool_version"] = RADLABEL_VERSION;
    doc["args"] = args_;
    doc["config"] = config_;
    doc["seeds"] = seeds_;
    doc["inputs"] = inputs_;
    json outs = json::array();
    for (const auto& p : outputs_) outs.push_back(p.string());
    doc["outputs"] = outs;
    doc["extra"] = extra_;
    doc["started_at"] = started_;
    doc["finished_at"] = utc_now();
    write_json_file(path, doc);
  }

 private:
  std::string command_;
  std::string started_;
  json config_;
  json args_;
  json seeds_ = json::object();
  json inputs_ = json::object();
  std::vector<fs::path> outputs_;
  json extra_ = json::object();
};

fs::path sidecar(const fs::path& file) { return fs::path(file.string() + ".manifest.json"); }

struct ModelOptions {
  std::string verbalizer;
  std::string mode = "multi";
  std::string template_path;
  std::string scorer;
  std::string grid;
  ToyMlmConfig toy;
  TrainConfig train;
  double tau = 0.5;
};

void add_model_options(CLI::App* sub, ModelOptions& m, bool with_grid) {
  sub->add_option("--verbalizer", m.verbalizer, "Verbalizer JSON")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--verbalizer-mode", m.mode, "single or multi")
      ->check(CLI::IsMember({"single", "multi"}));
  sub->add_option("--template", m.template_path, "Template JSON (default: manual template)")
      ->check(CLI::ExistingFile);
  sub->add_option("--scorer", m.scorer, "Pretrained scorer checkpoint")->check(CLI::ExistingFile);
  if (with_grid) {
    sub->add_option("--grid", m.grid, "Grid JSON; replaces the fixed training config")
        ->check(CLI::ExistingFile);
  }
  sub->add_option("--learning-rate", m.train.learning_rate);
  sub->add_option("--batch-size", m.train.batch_size);
  sub->add_option("--warmup-ratio", m.train.warmup_ratio);
  sub->add_option("--epochs", m.train.epochs);
  sub->add_option("--weight-decay", m.train.weight_decay);
  sub->add_option("--tau", m.tau, "Decision threshold");
  sub->add_option("--dim", m.toy.dim, "Toy scorer width (ignored with --scorer)");
  sub->add_option("--local-span", m.toy.local_span);
  sub->add_option("--max-len", m.toy.max_len);
}

Template load_prompt(const ModelOptions& m) {
  return m.template_path.empty() ? manual_template() : load_template(m.template_path);
}

Verbalizer load_aligned(const ModelOptions& m, const Corpus& corpus) {
  return align(load_verbalizer(m.verbalizer, parse_verbalizer_mode(m.mode)),
               corpus.categories());
}

void record_model_inputs(RunRecorder& rec, const ModelOptions& m) {
  rec.input(m.verbalizer);
  if (!m.template_path.empty()) rec.input(m.template_path);
  if (!m.scorer.empty()) rec.input(m.scorer);
  if (!m.grid.empty()) rec.input(m.grid);
}

// Builds untrained models for one training set.
class ModelBuilder {
 public:
  ModelBuilder(const ModelOptions& m, Verbalizer aligned)
      : options_(m), verbalizer_(std::move(aligned)) {
    if (!m.scorer.empty()) base_ = load_scorer(m.scorer);
  }

  PromptRadModel build(const Corpus& train_set, const Template& tmpl, std::uint64_t seed) const {
    if (base_) return PromptRadModel(base_->clone(), tmpl, verbalizer_, options_.tau);
    ToyMlmConfig cfg = options_.toy;
    cfg.seed = seed;
    return make_toy_model(train_set, verbalizer_, tmpl, cfg, options_.tau);
  }

  const Verbalizer& verbalizer() const { return verbalizer_; }

 private:
  const ModelOptions& options_;
  Verbalizer verbalizer_;
  std::shared_ptr<const MaskedTokenScorer> base_;
};

struct Fit {
  PromptRadModel model;
  TrainConfig config;
  TrainResult trace;
  json grid;
};

Fit fit(const Corpus& train_set, const ModelOptions& m, const ModelBuilder& builder,
        const Template& tmpl, std::uint64_t seed) {
  if (!m.grid.empty()) {
    const GridSpec grid = load_grid(m.grid);
    GridResult r = grid_search(
        train_set, grid, [&] { return builder.build(train_set, tmpl, seed); }, seed);
    json runs = json::array();
    for (const auto& run : r.runs) {
      json j = train_config_to_json(run.config);
      j["ok"] = run.ok;
      j["final_loss"] = run.final_loss;
      if (!run.ok) j["error"] = run.error;
      runs.push_back(std::move(j));
    }
    json taus = json::array();
    for (const auto& t : r.tau_scores) taus.push_back({{"tau", t.tau}, {"macro_f1", t.macro_f1}});
    json summary{{"runs", runs}, {"tau_scores", taus}, {"tau", r.tau}};
    r.model.set_tau(r.tau);
    return Fit{std::move(r.model), r.best, std::move(r.trace), std::move(summary)};
  }
  TrainConfig cfg = m.train;
  cfg.seed = seed;
  PromptRadModel model = builder.build(train_set, tmpl, seed);
  TrainResult trace = train(model, train_set, cfg);
  return Fit{std::move(model), cfg, std::move(trace), json()};
}

// The sample used for training: the whole corpus when k is 0.
KShotSample draw(const Corpus& pool, std::size_t k, std::uint64_t seed) {
  if (k == 0) {
    KShotSample all;
    all.sample = pool;
    for (std::size_t i = 0; i < pool.size(); ++i) all.indices.push_back(i);
    return all;
  }
  return stratified_kshot(pool, k, seed);
}

std::vector<std::string> report_ids(const Corpus& c) {
  std::vector<std::string> ids;
  for (const auto& r : c.reports()) ids.push_back(r.id);
  return ids;
}

std::vector<std::string> category_names(const Corpus& c) {
  std::vector<std::string> names;
  for (const auto& cat : c.categories()) names.push_back(cat.name);
  return names;
}

std::string predictions_csv(const Corpus& corpus, const std::vector<LabelVector>& preds) {
  std::vector<std::string> header{"id"};
  for (const auto& c : corpus.categories()) header.push_back(c.short_name);
  std::string out = csv_row(header);
  for (std::size_t i = 0; i < preds.size(); ++i) {
    std::vector<std::string> row{corpus.reports()[i].id};
    for (auto v : preds[i]) row.push_back(v ? "1" : "0");
    out += csv_row(row);
  }
  return out;
}

MentionLexicon lexicon_for(const std::string& path, const Corpus& corpus) {
  return path.empty() ? default_lexicon(corpus.categories())
                      : load_lexicon(path, corpus.categories());
}

NegationCueSet cues_for(const std::string& path) {
  return path.empty() ? default_negation_cues() : load_cues(path);
}

// Options shared by all commands, bound per subcommand.
struct Options {
  std::string spec;
  std::string corpus;
  std::string test;
  std::string out;
  std::string out_train;
  std::string out_test;
  std::string cutoff = "2014-12-31";
  std::string texts_templates;
  std::string model;
  std::string baseline;
  std::string baselines = "label-match";
  std::string lexicon;
  std::string cues;
  std::string fixture;
  std::string icl_corpus;
  std::string exclude;
  std::string ks;
  std::string generator = "grammar";
  std::string manifest;
  std::size_t icl_k = 0;
  std::size_t k = 32;
  std::size_t seeds = 0;
  std::size_t per_format = 5;
  std::uint64_t seed = 0;
  ModelOptions m;
  PretrainConfig pretrain;
};

int cmd_synth(const CLI::App& sub, Options& o, std::ostream& out) {
  RunRecorder rec("synth", sub);
  rec.input(o.spec);
  rec.seed("seed", o.seed);
  const SynthSpec spec = load_synth_spec(o.spec);
  const Corpus corpus = generate_synthetic_corpus(spec, o.seed);
  save_corpus(o.out, corpus);
  load_corpus(o.out);
  rec.output(o.out);
  rec.extra()["reports"] = corpus.size();
  rec.extra()["positives"] = corpus.positive_counts();
  rec.write(sidecar(o.out));
  out << "wrote " << corpus.size() << " reports to " << o.out << "\n";
  return kOk;
}

int cmd_split(const CLI::App& sub, Options& o, std::ostream& out, std::ostream& err) {
  RunRecorder rec("split", sub);
  rec.input(o.corpus);
  const Corpus corpus = load_corpus(o.corpus);
  const SplitResult split = chronological_split(corpus, parse_date(o.cutoff));
  for (const auto& w : split.warnings) err << "warning: " << w << "\n";
  save_corpus(o.out_train, split.train_pool);
  save_corpus(o.out_test, split.test);
  rec.output(o.out_train);
  rec.output(o.out_test);
  rec.extra()["train_pool"] = split.train_pool.size();
  rec.extra()["test"] = split.test.size();
  rec.extra()["warnings"] = split.warnings;
  rec.write(sidecar(o.out_train));
  out << "train pool " << split.train_pool.size() << ", test " << split.test.size() << "\n";
  return kOk;
}

int cmd_sample(const CLI::App& sub, Options& o, std::ostream& out) {
  RunRecorder rec("sample", sub);
  rec.input(o.corpus);
  rec.seed("seed", o.seed);
  const Corpus pool = load_corpus(o.corpus);
  const KShotSample s = stratified_kshot(pool, o.k, o.seed);
  save_corpus(o.out, s.sample);
  rec.output(o.out);
  rec.extra()["indices"] = s.indices;
  rec.extra()["targets"] = s.targets;
  rec.extra()["achieved"] = s.achieved;
  rec.extra()["allocation_exact"] = s.allocation_exact;
  rec.write(sidecar(o.out));
  out << "sampled " << s.sample.size() << " reports to " << o.out << "\n";
  return kOk;
}

int cmd_pretrain(const CLI::App& sub, Options& o, std::ostream& out) {
  RunRecorder rec("pretrain", sub);
  rec.input(o.corpus);
  rec.input(o.m.verbalizer);
  rec.seed("seed", o.seed);
  const Corpus corpus = load_corpus(o.corpus);
  std::vector<std::string> texts;
  for (const auto& r : corpus.reports()) texts.push_back(r.text);
  std::vector<Template> templates;
  if (o.texts_templates.empty()) {
    templates.push_back(manual_template());
    for (const auto& t : reference_auto_templates()) templates.push_back(t);
  } else {
    for (const auto& p : split_list(o.texts_templates)) {
      rec.input(p);
      templates.push_back(load_template(p));
    }
  }
  const Verbalizer verbalizer = load_verbalizer(o.m.verbalizer, parse_verbalizer_mode(o.m.mode));
  ToyMlmConfig toy = o.m.toy;
  toy.seed = o.seed;
  ToyMlm scorer(corpus_vocabulary(texts, verbalizer, templates), toy);
  PretrainConfig cfg = o.pretrain;
  cfg.seed = o.seed;
  const PretrainResult r = pretrain_context_words(scorer, texts, templates, cfg);
  save_scorer(o.out, scorer);
  rec.output(o.out);
  rec.extra()["vocabulary"] = scorer.vocab().size();
  rec.extra()["epoch_losses"] = r.epoch_losses;
  rec.extra()["parameters_sha256"] = sha256_hex(scorer.parameters());
  rec.write(sidecar(o.out));
  out << "pretrained " << r.steps << " steps, final loss "
      << (r.epoch_losses.empty() ? 0.0 : r.epoch_losses.back()) << "\n";
  return kOk;
}

int cmd_train(const CLI::App& sub, Options& o, std::ostream& out) {
  RunRecorder rec("train", sub);
  rec.input(o.corpus);
  record_model_inputs(rec, o.m);
  rec.seed("seed", o.seed);
  const Corpus pool = load_corpus(o.corpus);
  const KShotSample s = draw(pool, o.k, o.seed);
  const Template tmpl = load_prompt(o.m);
  const ModelBuilder builder(o.m, load_aligned(o.m, pool));
  Fit f = fit(s.sample, o.m, builder, tmpl, o.seed);

  const fs::path dir = o.out;
  BundleManifest manifest;
  manifest.tau = f.model.tau();
  manifest.config = f.config;
  manifest.seed = o.seed;
  manifest.categories = category_names(pool);
  manifest.extra["k"] = s.sample.size();
  manifest.extra["train_ids"] = report_ids(s.sample);
  manifest.extra["template"] = tmpl.pattern();
  manifest.extra["verbalizer_mode"] = o.m.mode;
  save_bundle(dir, f.model, manifest, &f.trace);
  load_bundle(dir, &pool.categories());
  for (const char* name :
       {"manifest.json", "scorer.json", "template.json", "verbalizer.json", "loss_trace.csv"}) {
    rec.output(dir / name);
  }
  if (!f.grid.is_null()) {
    write_json_file(dir / "grid.json", f.grid);
    rec.output(dir / "grid.json");
  }
  rec.extra()["final_loss"] = f.trace.final_loss();
  rec.extra()["tau"] = f.model.tau();
  rec.write(dir / "run_manifest.json");
  out << "trained on " << s.sample.size() << " reports, final loss " << f.trace.final_loss()
      << ", tau " << f.model.tau() << "\n";
  return kOk;
}

int cmd_autotemplate(const CLI::App& sub, Options& o, std::ostream& out) {
  RunRecorder rec("autotemplate", sub);
  rec.input(o.corpus);
  record_model_inputs(rec, o.m);
  rec.seed("seed", o.seed);
  if (o.generator != "grammar") throw UsageError("--generator: unknown generator " + o.generator);
  const Corpus pool = load_corpus(o.corpus);
  const KShotSample s = draw(pool, o.k, o.seed);
  const ModelBuilder builder(o.m, load_aligned(o.m, pool));
  GrammarTemplateGenerator generator;
  const CandidateSet generated =
      generate_candidates(generator, s.sample, builder.verbalizer(), o.per_format);
  const CandidateSet ranked = rank_candidates(generated, s.sample, builder.verbalizer(), generator);
  TrainConfig cfg = o.m.train;
  cfg.seed = o.seed;
  const SelectionResult sel = select_best(
      ranked, s.sample, [&](const Template& t) { return builder.build(s.sample, t, o.seed); },
      cfg);

  const fs::path dir = o.out;
  write_json_file(dir / "candidates.json", candidates_to_json(ranked));
  write_json_file(dir / "selection.json", selection_to_json(sel));
  save_template(dir / "template.json", sel.best);
  for (const char* name : {"candidates.json", "selection.json", "template.json"}) {
    rec.output(dir / name);
  }
  rec.extra()["train_ids"] = report_ids(s.sample);
  rec.extra()["selected"] = sel.best.pattern();
  rec.write(dir / "run_manifest.json");
  out << "selected '" << sel.best.pattern() << "' from " << ranked.candidates.size()
      << " candidates\n";
  return kOk;
}

int cmd_eval(const CLI::App& sub, Options& o, std::ostream& out) {
  RunRecorder rec("eval", sub);
  rec.input(o.corpus);
  rec.seed("seed", o.seed);
  if (o.model.empty() == o.baseline.empty()) {
    throw UsageError("exactly one of --model or --baseline is required");
  }
  const Corpus test = load_corpus(o.corpus);
  Labeler labeler;
  std::string config_id;
  std::optional<PromptRadModel> model;
  std::unique_ptr<FixtureTransport> transport;
  std::optional<Corpus> icl_corpus;
  IclOptions icl;
  if (!o.model.empty()) {
    if (!fs::is_directory(o.model)) throw Error("no model bundle at " + o.model);
    rec.input(o.model);
    model.emplace(load_bundle(o.model, &test.categories()).model);
    labeler = [&](const Report& r) { return predict(*model, r); };
    config_id = "model";
  } else if (o.baseline == "label-match") {
    if (!o.lexicon.empty()) rec.input(o.lexicon);
    labeler = [lex = lexicon_for(o.lexicon, test)](const Report& r) {
      return label_match(r.text, lex);
    };
    config_id = o.baseline;
  } else if (o.baseline == "negation-cue") {
    if (!o.lexicon.empty()) rec.input(o.lexicon);
    if (!o.cues.empty()) rec.input(o.cues);
    labeler = [lex = lexicon_for(o.lexicon, test), cues = cues_for(o.cues)](const Report& r) {
      return negation_cue_label(r.text, lex, cues);
    };
    config_id = o.baseline;
  } else {
    if (o.fixture.empty()) throw UsageError("--baseline llm-fixture needs --fixture");
    rec.input(o.fixture);
    transport = std::make_unique<FixtureTransport>(FixtureTransport::load(o.fixture));
    const IclOptions* icl_ptr = nullptr;
    if (o.icl_k > 0) {
      if (o.icl_corpus.empty()) throw UsageError("--icl-k needs --icl-corpus");
      rec.input(o.icl_corpus);
      icl_corpus.emplace(load_corpus(o.icl_corpus));
      icl.train = &*icl_corpus;
      icl.k = o.icl_k;
      icl.seed = o.seed;
      icl_ptr = &icl;
    }
    labeler = [&, icl_ptr](const Report& r) {
      return run_llm_labeler(*transport, r, test.categories(), icl_ptr).labels;
    };
    config_id = o.baseline;
  }

  const RunResult result = evaluate(labeler, test, o.seed, config_id);
  const fs::path dir = o.out;
  const std::vector<RunResult> runs{result};
  write_file_atomic(dir / "results.csv", results_csv(runs, test.categories()));
  write_file_atomic(dir / "predictions.csv", predictions_csv(test, result.predictions));
  const std::vector<std::uint64_t> seeds{o.seed};
  const MultiRunSummary summary =
      multi_run([&](std::uint64_t) { return result; }, seeds);
  write_json_file(dir / "summary.json", summary_json(summary, test.categories()));
  for (const char* name : {"results.csv", "predictions.csv", "summary.json"}) {
    rec.output(dir / name);
  }
  rec.extra()["macro_f1"] = result.f1.macro;
  rec.extra()["micro_f1"] = result.f1.micro;
  rec.write(dir / "run_manifest.json");
  out << config_id << ": macro F1 " << result.f1.macro << ", micro F1 " << result.f1.micro
      << "\n";
  return kOk;
}

int cmd_negation(const CLI::App& sub, Options& o, std::ostream& out) {
  RunRecorder rec("negation", sub);
  rec.input(o.corpus);
  const Corpus test = load_corpus(o.corpus);
  const MentionLexicon lexicon = lexicon_for(o.lexicon, test);
  const NegationCueSet cues = cues_for(o.cues);
  if (!o.lexicon.empty()) rec.input(o.lexicon);
  if (!o.cues.empty()) rec.input(o.cues);
  const std::vector<std::string> excluded =
      o.exclude.empty() ? default_negation_exclusions() : split_list(o.exclude);
  const auto cases = extract_negation_cases(test, lexicon, excluded);

  std::vector<std::pair<std::string, NegationAccuracy>> columns;
  for (const auto& b : split_list(o.baselines)) {
    if (b == "label-match") {
      columns.emplace_back("Label Match",
                           negation_accuracy([&](const Report& r) { return label_match(r.text, lexicon); },
                                             cases, test));
    } else if (b == "negation-cue") {
      columns.emplace_back(
          "Negation Cue",
          negation_accuracy(
              [&](const Report& r) { return negation_cue_label(r.text, lexicon, cues); }, cases,
              test));
    } else {
      throw UsageError("--baselines: unknown baseline " + b);
    }
  }
  const auto model_dirs = split_list(o.model);
  for (const auto& dir : model_dirs) {
    rec.input(dir);
    const PromptRadModel model = load_bundle(dir, &test.categories()).model;
    const std::string name =
        model_dirs.size() == 1 ? "PromptRad" : "PromptRad " + fs::path(dir).filename().string();
    columns.emplace_back(
        name, negation_accuracy([&](const Report& r) { return predict(model, r); }, cases, test));
  }
  if (columns.empty()) throw UsageError("nothing to evaluate: give --model or --baselines");
  write_file_atomic(o.out, negation_csv(test.categories(), columns));
  rec.output(o.out);
  rec.extra()["cases"] = cases.size();
  rec.write(sidecar(o.out));
  out << cases.size() << " negation cases";
  for (const auto& [name, acc] : columns) out << ", " << name << " " << acc.overall();
  out << "\n";
  return kOk;
}

int cmd_sweep(const CLI::App& sub, Options& o, std::ostream& out) {
  RunRecorder rec("sweep", sub);
  rec.input(o.corpus);
  rec.input(o.test);
  record_model_inputs(rec, o.m);
  rec.seed("seed", o.seed);
  const Corpus pool = load_corpus(o.corpus);
  const Corpus test = load_corpus(o.test);
  const std::vector<std::size_t> ks =
      o.ks.empty() ? default_sweep_sizes(pool.size()) : parse_sizes(o.ks, "--ks");
  const Template tmpl = load_prompt(o.m);
  const ModelBuilder builder(o.m, load_aligned(o.m, pool));
  const std::uint64_t base = o.seed;
  const std::size_t fixed = o.seeds;
  const SeedPolicy policy = [base, fixed](std::size_t k) {
    if (fixed == 0) return default_seeds(k, base);
    std::vector<std::uint64_t> seeds;
    for (std::size_t i = 0; i < fixed; ++i) seeds.push_back(base + i);
    return seeds;
  };
  const KShotRunner runner = [&](const Corpus& train_set, std::uint64_t seed) {
    Fit f = fit(train_set, o.m, builder, tmpl, seed);
    return evaluate([&](const Report& r) { return predict(f.model, r); }, test, seed);
  };
  const auto points = size_sweep(runner, ks, pool, policy);

  std::vector<RunResult> all;
  json summary = json::array();
  for (const auto& p : points) {
    all.insert(all.end(), p.summary.runs.begin(), p.summary.runs.end());
    json j = summary_json(p.summary, test.categories());
    j["k"] = p.k;
    j["full"] = p.full;
    summary.push_back(std::move(j));
  }
  const fs::path dir = o.out;
  write_file_atomic(dir / "runs.csv", results_csv(all, test.categories()));
  write_file_atomic(dir / "sweep.csv", sweep_csv(points));
  write_json_file(dir / "summary.json", summary);
  for (const char* name : {"runs.csv", "sweep.csv", "summary.json"}) rec.output(dir / name);
  rec.write(dir / "run_manifest.json");
  for (const auto& p : points) {
    out << "k=" << p.k << ": macro F1 " << p.summary.macro.mean << " +/- "
        << p.summary.macro.stddev << " over " << p.summary.runs.size() << " runs\n";
  }
  return kOk;
}

std::vector<std::string> replay_args(Options& o) {
  const auto doc = read_json_file(o.manifest);
  if (!doc.contains("command") || !doc.contains("args")) {
    throw Error(o.manifest + ": not a run manifest");
  }
  std::vector<std::string> args{doc["command"].get<std::string>()};
  for (const auto& a : doc["args"]) {
    const auto s = a.get<std::string>();
    if (!o.out.empty() && s.rfind("--out=", 0) == 0) continue;
    args.push_back(s);
  }
  if (!o.out.empty()) args.push_back("--out=" + o.out);
  return args;
}

// Moves `--config FILE` out of `args` and turns its entries into
// `--key=value` arguments placed right after the subcommand name.
void apply_config(std::vector<std::string>& args, CLI::App& app, std::ostream& err) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return;
  std::size_t at = 0;
  CLI::App* sub = nullptr;
  for (; at < args.size(); ++at) {
    sub = app.get_subcommand_no_throw(args[at]);
    if (sub != nullptr) break;
  }
  if (sub == nullptr) throw UsageError("--config needs a subcommand");
  std::vector<std::string> injected;
  for (const auto& [key, value] : read_config(path)) {
    std::string name = key;
    std::replace(name.begin(), name.end(), '_', '-');
    if (sub->get_option_no_throw("--" + name) == nullptr) {
      err << "warning: config key '" << key << "' is not used by " << sub->get_name() << "\n";
      continue;
    }
    injected.push_back("--" + name + "=" + value);
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(at + 1), injected.begin(),
              injected.end());
}

}  // namespace

int run(const std::vector<std::string>& input_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Few-shot prompt-based labeling of radiology reports", "radlabel"};
  app.set_version_flag("--version", std::string(RADLABEL_VERSION));
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.option_defaults()->always_capture_default();

  Options o;
  auto add_seed = [&](CLI::App* s) {
    s->add_option("--seed", o.seed, "Seed for every random choice");
  };
  auto add_corpus = [&](CLI::App* s) {
    s->add_option("--corpus", o.corpus, "Corpus file")->required()->check(CLI::ExistingFile);
  };

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth->add_option("--spec", o.spec, "Synthesis spec JSON")->required()->check(CLI::ExistingFile);
  synth->add_option("--out", o.out, "Corpus file to write")->required();
  add_seed(synth);

  auto* split = app.add_subcommand("split", "Chronological train pool / test split");
  add_corpus(split);
  split->add_option("--cutoff", o.cutoff, "Last date of the train pool (YYYY-MM-DD)");
  split->add_option("--out-train", o.out_train)->required();
  split->add_option("--out-test", o.out_test)->required();

  auto* sample = app.add_subcommand("sample", "Stratified K-shot sample");
  add_corpus(sample);
  sample->add_option("--k", o.k)->required();
  sample->add_option("--out", o.out)->required();
  add_seed(sample);

  auto* pretrain = app.add_subcommand("pretrain", "Self-supervised pretraining of the toy scorer");
  add_corpus(pretrain);
  pretrain->add_option("--verbalizer", o.m.verbalizer)->required()->check(CLI::ExistingFile);
  pretrain->add_option("--verbalizer-mode", o.m.mode)->check(CLI::IsMember({"single", "multi"}));
  pretrain->add_option("--templates", o.texts_templates,
                       "Comma-separated template files (default: built-in templates)");
  pretrain->add_option("--dim", o.m.toy.dim);
  pretrain->add_option("--local-span", o.m.toy.local_span);
  pretrain->add_option("--max-len", o.m.toy.max_len);
  pretrain->add_option("--learning-rate", o.pretrain.learning_rate);
  pretrain->add_option("--batch-size", o.pretrain.batch_size);
  pretrain->add_option("--epochs", o.pretrain.epochs);
  pretrain->add_option("--weight-decay", o.pretrain.weight_decay);
  pretrain->add_option("--out", o.out, "Scorer checkpoint to write")->required();
  add_seed(pretrain);

  auto* train_cmd = app.add_subcommand("train", "Train a model bundle on a K-shot sample");
  add_corpus(train_cmd);
  train_cmd->add_option("--k", o.k, "Training reports; 0 uses the whole corpus");
  add_model_options(train_cmd, o.m, true);
  train_cmd->add_option("--out", o.out, "Bundle directory")->required();
  add_seed(train_cmd);

  auto* autot = app.add_subcommand("autotemplate", "Generate, rank and select templates");
  add_corpus(autot);
  autot->add_option("--k", o.k, "Training reports; 0 uses the whole corpus");
  autot->add_option("--per-format", o.per_format, "Candidates per template format");
  autot->add_option("--generator", o.generator, "Template generator")
      ->check(CLI::IsMember({"grammar"}));
  add_model_options(autot, o.m, false);
  autot->add_option("--out", o.out, "Output directory")->required();
  add_seed(autot);

  auto* eval = app.add_subcommand("eval", "Score a bundle or baseline on a test corpus");
  add_corpus(eval);
  eval->add_option("--model", o.model, "Bundle directory");
  eval->add_option("--baseline", o.baseline)
      ->check(CLI::IsMember({"label-match", "negation-cue", "llm-fixture"}));
  eval->add_option("--lexicon", o.lexicon, "Surface-form lexicon JSON")->check(CLI::ExistingFile);
  eval->add_option("--cues", o.cues, "Negation cue JSON")->check(CLI::ExistingFile);
  eval->add_option("--fixture", o.fixture, "Recorded LLM responses")->check(CLI::ExistingFile);
  eval->add_option("--icl-k", o.icl_k, "In-context examples per request");
  eval->add_option("--icl-corpus", o.icl_corpus)->check(CLI::ExistingFile);
  eval->add_option("--out", o.out, "Output directory")->required();
  add_seed(eval);

  auto* negation = app.add_subcommand("negation", "Accuracy on negated mentions");
  add_corpus(negation);
  negation->add_option("--model", o.model, "Comma-separated bundle directories");
  negation->add_option("--baselines", o.baselines, "label-match and/or negation-cue");
  negation->add_option("--exclude", o.exclude, "Comma-separated categories to skip");
  negation->add_option("--lexicon", o.lexicon)->check(CLI::ExistingFile);
  negation->add_option("--cues", o.cues)->check(CLI::ExistingFile);
  negation->add_option("--out", o.out, "CSV to write")->required();

  auto* sweep = app.add_subcommand("sweep", "Macro F1 across training sizes");
  add_corpus(sweep);
  sweep->add_option("--test", o.test, "Test corpus")->required()->check(CLI::ExistingFile);
  sweep->add_option("--ks", o.ks, "Comma-separated sizes (default: 8..128 and the pool)");
  sweep->add_option("--seeds", o.seeds, "Seeds per size; 0 means 10 at K=8, 5 otherwise");
  add_model_options(sweep, o.m, true);
  sweep->add_option("--out", o.out, "Output directory")->required();
  add_seed(sweep);

  auto* replay = app.add_subcommand("replay", "Rerun the command recorded in a run manifest");
  replay->add_option("--manifest", o.manifest)->required()->check(CLI::ExistingFile);
  replay->add_option("--out", o.out, "Override the recorded output");

  std::vector<std::string> args = input_args;
  try {
    apply_config(args, app, err);
    std::vector<const char*> argv{"radlabel"};
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (synth->parsed()) return cmd_synth(*synth, o, out);
    if (split->parsed()) return cmd_split(*split, o, out, err);
    if (sample->parsed()) return cmd_sample(*sample, o, out);
    if (pretrain->parsed()) return cmd_pretrain(*pretrain, o, out);
    if (train_cmd->parsed()) return cmd_train(*train_cmd, o, out);
    if (autot->parsed()) return cmd_autotemplate(*autot, o, out);
    if (eval->parsed()) return cmd_eval(*eval, o, out);
    if (negation->parsed()) return cmd_negation(*negation, o, out);
    if (sweep->parsed()) return cmd_sweep(*sweep, o, out);
    if (replay->parsed()) return run(replay_args(o), out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace radlabel::cli
