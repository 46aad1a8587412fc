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

#ifndef UISEM_SELECTION_H_
#define UISEM_SELECTION_H_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "uisem/config.h"
#include "uisem/model.h"
#include "uisem/raster.h"

namespace uisem {

enum class SelectionRule {
  kTintOutlier,
  kBottomBar,
  kUniqueText,
};

std::string_view ToString(SelectionRule rule);

struct SelectionResult {
  // One flag per input; all unset when no rule produced a unique candidate,
  // otherwise exactly one true.
  std::vector<std::optional<bool>> flags;
  std::optional<SelectionRule> rule;

  std::optional<size_t> selected_index() const;
};

// The tab whose tint is the unique outlier among all tabs is selected.
// Degrades to all-unset with fewer than two tabs or without a raster.
SelectionResult SelectTabState(std::span<const BBox> tabs, const Raster* raster,
                               int quantization_bits);

// Cascade over one row of segments: tint outlier, then the outlier of the
// dominant bottom-strip color (underline bars), then the only segment with
// text. Without a raster only the text rule is tried.
SelectionResult SelectSegmentedState(std::span<const DetectedElement> segments,
                                     const Raster* raster,
                                     int quantization_bits);

// Pixel rows at the bottom of a segment examined for an underline bar.
PixelRect BottomStrip(const Raster& raster, const BBox& box);

// Groups SegmentedControl elements into rows (vertical overlap of at least
// sc_row_y_overlap_min of the shorter one). Rows of one are dropped; each
// row is sorted left to right.
std::vector<std::vector<size_t>> SegmentedControlRows(
    std::span<const DetectedElement> elements, const HeuristicConfig& config);

}  // namespace uisem

#endif  // UISEM_SELECTION_H_
