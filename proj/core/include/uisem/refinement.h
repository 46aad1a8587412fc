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

#ifndef UISEM_REFINEMENT_H_
#define UISEM_REFINEMENT_H_

#include <span>
#include <string>
#include <vector>

#include "uisem/config.h"
#include "uisem/model.h"

namespace uisem {

// Element accounting for one pipeline stage:
// elements_in == elements_out + removed - added.
struct StageCounts {
  std::string stage;
  int elements_in = 0;
  int elements_out = 0;
  int removed = 0;
  int added = 0;
  int retyped = 0;

  bool Balanced() const { return elements_in == elements_out + removed - added; }
};

// Keeps e iff e.confidence >= threshold[e.type]. Types without a threshold
// are kept and reported through `warnings` (when non-null).
std::vector<DetectedElement> FilterByConfidence(
    std::span<const DetectedElement> elements, const HeuristicConfig& config,
    std::vector<std::string>* warnings = nullptr);

// Greedy per-class NMS: confidence-descending (input order on ties), keep a
// detection iff its IoU with every kept detection of its class is below
// `iou_threshold`. Survivors keep their input order.
std::vector<DetectedElement> NmsWithinClass(
    std::span<const DetectedElement> elements, double iou_threshold);

// Greedy suppression across the visually similar types of each dedup group:
// a detection is dropped when its IoU with an already kept, more confident
// detection from the same group exceeds config.dedup_iou.
std::vector<DetectedElement> DedupCrossClass(
    std::span<const DetectedElement> elements, const HeuristicConfig& config);

// Retypes Text detections that sit on the row of a detected segmented
// control without being contained by one. Runs to a fixed point so that the
// operation is idempotent.
std::vector<DetectedElement> RepairSegmentedControls(
    std::span<const DetectedElement> elements, const HeuristicConfig& config);

// OCR lines with zero intersection with every element become new Text
// elements (confidence 1). Overlapping lines donate their string to the
// best-IoU overlapping Text that has none; otherwise they are discarded.
// A line whose string an overlapping Text already carries is left alone, so
// merging the same lines twice changes nothing.
std::vector<DetectedElement> MergeOcr(std::span<const DetectedElement> elements,
                                      std::span<const OcrText> ocr);

struct RefinementResult {
  std::vector<DetectedElement> elements;
  std::vector<StageCounts> stages;
  std::vector<std::string> warnings;
};

// filter -> nms -> cross-class dedup -> segmented-control repair -> OCR.
RefinementResult Refine(std::span<const DetectedElement> elements,
                        std::span<const OcrText> ocr,
                        const HeuristicConfig& config);

}  // namespace uisem

#endif  // UISEM_REFINEMENT_H_
