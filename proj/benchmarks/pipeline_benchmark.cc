// Copyright 2026 The uisem Authors
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

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "uisem/ordering.h"
#include "uisem/pipeline.h"
#include "uisem/refinement.h"
#include "uisem/synthgen.h"

namespace uisem {
namespace {

GenSpec NoisySpec(int screens, bool render) {
  GenSpec spec;
  spec.seed = 17;
  spec.num_screens = screens;
  spec.render = render;
  spec.noise.jitter_sigma = 0.02;
  spec.noise.confidence_sigma = 0.2;
  spec.noise.spurious_rate = 0.5;
  spec.noise.duplicate_probability = {{UIType::kIcon, 0.2}, {UIType::kPicture, 0.2}};
  return spec;
}

void BM_ProcessScreen(benchmark::State& state) {
  const Corpus corpus = GenerateCorpus(NoisySpec(64, true));
  std::vector<Screen> screens;
  for (const auto& s : corpus.screens) {
    screens.push_back(s.noisy);
    screens.back().raster = s.truth.raster;
  }
  size_t i = 0;
  for (auto _ : state) {
    const auto& s = corpus.screens[i % screens.size()];
    benchmark::DoNotOptimize(ProcessScreen(screens[i % screens.size()], s.ocr, {}));
    ++i;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ProcessScreen);

void BM_Refine(benchmark::State& state) {
  const Corpus corpus = GenerateCorpus(NoisySpec(64, false));
  const HeuristicConfig config;
  size_t i = 0;
  for (auto _ : state) {
    const auto& s = corpus.screens[i++ % corpus.screens.size()];
    benchmark::DoNotOptimize(Refine(s.noisy.elements, s.ocr, config));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Refine);

void BM_NmsWithinClass(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 0.9);
  std::vector<DetectedElement> elements;
  for (int i = 0; i < state.range(0); ++i) {
    const double l = u(rng);
    const double t = u(rng);
    elements.push_back({.id = std::to_string(i),
                        .box = BBox(l, t, l + 0.1, t + 0.1),
                        .type = i % 2 ? UIType::kIcon : UIType::kText,
                        .confidence = u(rng)});
  }
  for (auto _ : state) benchmark::DoNotOptimize(NmsWithinClass(elements, 0.5));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NmsWithinClass)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_XyCutOrder(benchmark::State& state) {
  // A grid of cells, shuffled.
  const int side = static_cast<int>(state.range(0));
  std::vector<BBox> boxes;
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const double cell = 1.0 / side;
      boxes.emplace_back(c * cell, r * cell, (c + 0.8) * cell, (r + 0.8) * cell);
    }
  }
  std::shuffle(boxes.begin(), boxes.end(), std::mt19937_64(5));
  for (auto _ : state) benchmark::DoNotOptimize(XyCutOrder(boxes));
  state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(BM_XyCutOrder)->DenseRange(4, 16, 4)->Complexity();

}  // namespace
}  // namespace uisem

BENCHMARK_MAIN();
