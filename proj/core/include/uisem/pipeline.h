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

#ifndef UISEM_PIPELINE_H_
#define UISEM_PIPELINE_H_

#include <atomic>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "uisem/clickability.h"
#include "uisem/config.h"
#include "uisem/json_io.h"
#include "uisem/model.h"
#include "uisem/refinement.h"

namespace uisem {

struct PipelineOptions {
  HeuristicConfig config;
  // Icons stay unset without a model.
  const ClickabilityModel* clickability = nullptr;
};

struct ScreenOutcome {
  AccessibilityTree tree;
  std::vector<StageCounts> stages;
  std::vector<std::string> warnings;
  // Set when the screen failed; the tree is then empty.
  std::optional<std::string> error;
};

// Selection state for checkboxes and toggles (from their class), segmented
// control rows (from pixels and text) and clickability for every element.
std::vector<DetectedElement> InferSemantics(std::span<const DetectedElement> elements,
                                            const Raster* raster,
                                            const PipelineOptions& options);

// refinement -> semantics -> structure for one screen. Never throws; errors
// are reported in the outcome.
ScreenOutcome ProcessScreen(const Screen& screen, std::span<const OcrText> ocr,
                            const PipelineOptions& options);

// Runs `fn(i)` for i in [0, n) on up to `jobs` threads.
void ParallelFor(size_t n, int jobs, const std::function<void(size_t)>& fn);

// Output order matches input order regardless of scheduling.
std::vector<ScreenOutcome> ProcessScreens(std::span<const Screen> screens,
                                          const OcrByScreen& ocr,
                                          const PipelineOptions& options,
                                          int jobs = 1);

nlohmann::json DiagnosticsJson(std::span<const ScreenOutcome> outcomes);

}  // namespace uisem

#endif  // UISEM_PIPELINE_H_
