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

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "radlabel/baselines.h"
#include "radlabel/evalkit.h"
#include "radlabel/labeler.h"
#include "radlabel/pipeline.h"
#include "radlabel/toy_mlm.h"
#include "radlabel/verbalizer.h"
#include "radlabel/vocabulary.h"

namespace radlabel {
namespace {

const char* const kReport =
    "Liver: Multiple hypodense lesions in segment VI, largest 2.1 cm, compatible with cysts. "
    "No evidence of arterial enhancing lesion. Status post TACE with lipiodol retention. "
    "Diffuse fatty infiltration of the liver. Nodular contour of the liver surface.";

PromptRadModel make_model(std::size_t dim) {
  const Verbalizer v = align(liver_ct_verbalizer(VerbalizerMode::kMulti), liver_ct_categories());
  ToyMlmConfig cfg;
  cfg.dim = dim;
  const std::vector<std::string> texts{kReport};
  const std::vector<Template> templates{manual_template()};
  auto scorer = std::make_unique<ToyMlm>(corpus_vocabulary(texts, v, templates), cfg);
  return PromptRadModel(std::move(scorer), manual_template(), v);
}

void BM_CategoryLogits(benchmark::State& state) {
  const auto model = make_model(static_cast<std::size_t>(state.range(0)));
  const auto input = model.encode(kReport);
  for (auto _ : state) benchmark::DoNotOptimize(model.category_logits(input));
}
BENCHMARK(BM_CategoryLogits)->Arg(16)->Arg(32)->Arg(64);

void BM_ScorerBackward(benchmark::State& state) {
  const auto model = make_model(static_cast<std::size_t>(state.range(0)));
  const auto input = model.encode(kReport);
  const auto& ids = model.mapped_ids();
  std::vector<double> dlogits(ids.size(), 0.1);
  std::vector<double> grad(model.scorer().parameters().size());
  for (auto _ : state) {
    model.scorer().backward(input.tokens, input.mask_pos, ids, dlogits, grad);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_ScorerBackward)->Arg(16)->Arg(32)->Arg(64);

void BM_LabelMatch(benchmark::State& state) {
  const auto lexicon = default_lexicon(liver_ct_categories());
  for (auto _ : state) benchmark::DoNotOptimize(label_match(kReport, lexicon));
}
BENCHMARK(BM_LabelMatch);

void BM_F1Scores(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::vector<LabelVector> p(n, LabelVector(7)), g(n, LabelVector(7));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < 7; ++c) {
      p[i][c] = rng() & 1;
      g[i][c] = rng() & 1;
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(f1_scores(p, g));
}
BENCHMARK(BM_F1Scores)->Arg(311)->Arg(4096);

}  // namespace
}  // namespace radlabel

BENCHMARK_MAIN();
