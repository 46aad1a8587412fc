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

#include "uisem/pipeline.h"

#include <algorithm>
#include <exception>

#include "uisem/selection.h"
#include "uisem/tree.h"

namespace uisem {

std::vector<DetectedElement> InferSemantics(std::span<const DetectedElement> elements,
                                            const Raster* raster,
                                            const PipelineOptions& options) {
  std::vector<DetectedElement> out(elements.begin(), elements.end());
  for (auto& e : out) {
    switch (e.type) {
      case UIType::kCheckboxSelected:
      case UIType::kToggleSelected:
        e.selected = true;
        break;
      case UIType::kCheckboxUnselected:
      case UIType::kToggleUnselected:
        e.selected = false;
        break;
      default:
        break;
    }
    e.clickable = ScoreClickability(options.clickability, e);
  }
  for (const auto& row : SegmentedControlRows(out, options.config)) {
    std::vector<DetectedElement> segments;
    for (size_t i : row) segments.push_back(out[i]);
    const SelectionResult r = SelectSegmentedState(
        segments, raster, options.config.tint_quantization_bits);
    for (size_t k = 0; k < row.size(); ++k) out[row[k]].selected = r.flags[k];
  }
  return out;
}

ScreenOutcome ProcessScreen(const Screen& screen, std::span<const OcrText> ocr,
                            const PipelineOptions& options) {
  ScreenOutcome outcome;
  outcome.tree.screen_id = screen.screen_id;
  try {
    RefinementResult refined = Refine(screen.elements, ocr, options.config);
    outcome.stages = std::move(refined.stages);
    outcome.warnings = std::move(refined.warnings);

    const Raster* raster = screen.raster.get();
    auto enriched = InferSemantics(refined.elements, raster, options);
    outcome.stages.push_back({.stage = "semantics",
                              .elements_in = static_cast<int>(refined.elements.size()),
                              .elements_out = static_cast<int>(enriched.size())});

    outcome.tree = BuildTree(screen.screen_id, enriched, raster, options.config);
    const int in_tree = static_cast<int>(ElementIds(outcome.tree).size());
    outcome.stages.push_back({.stage = "structure",
                              .elements_in = static_cast<int>(enriched.size()),
                              .elements_out = in_tree});
  } catch (const std::exception& e) {
    outcome.tree.nodes.clear();
    outcome.error = e.what();
  }
  return outcome;
}

void ParallelFor(size_t n, int jobs, const std::function<void(size_t)>& fn) {
  const size_t workers =
      std::min<size_t>(n, static_cast<size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

std::vector<ScreenOutcome> ProcessScreens(std::span<const Screen> screens,
                                          const OcrByScreen& ocr,
                                          const PipelineOptions& options,
                                          int jobs) {
  std::vector<ScreenOutcome> outcomes(screens.size());
  ParallelFor(screens.size(), jobs, [&](size_t i) {
    std::span<const OcrText> lines;
    if (auto it = ocr.find(screens[i].screen_id); it != ocr.end()) lines = it->second;
    outcomes[i] = ProcessScreen(screens[i], lines, options);
  });
  return outcomes;
}

nlohmann::json DiagnosticsJson(std::span<const ScreenOutcome> outcomes) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& o : outcomes) {
    nlohmann::json stages = nlohmann::json::array();
    for (const auto& s : o.stages) {
      stages.push_back({{"stage", s.stage},
                        {"elements_in", s.elements_in},
                        {"elements_out", s.elements_out},
                        {"removed", s.removed},
                        {"added", s.added},
                        {"retyped", s.retyped}});
    }
    nlohmann::json entry{{"screen_id", o.tree.screen_id},
                         {"stages", std::move(stages)},
                         {"warnings", o.warnings}};
    if (o.error) entry["error"] = *o.error;
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace uisem
