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

#include "uisem/selection.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "uisem/tint.h"
#include "union_find.h"

namespace uisem {
namespace {

constexpr double kBottomStripFraction = 0.1;

SelectionResult Unset(size_t n) {
  return {std::vector<std::optional<bool>>(n), std::nullopt};
}

SelectionResult Pick(size_t n, size_t selected, SelectionRule rule) {
  SelectionResult r{std::vector<std::optional<bool>>(n, false), rule};
  r.flags[selected] = true;
  return r;
}

std::optional<size_t> TintOutlier(std::span<const BBox> boxes,
                                  const Raster& raster, int bits) {
  std::vector<QuantizedColor> tints;
  tints.reserve(boxes.size());
  try {
    for (const BBox& box : boxes) {
      tints.push_back(ExtractTint(&raster, box, bits).tint);
    }
  } catch (const EmptyCropError&) {
    return std::nullopt;
  }
  return FindColorOutlier(tints);
}

std::optional<size_t> BottomBarOutlier(std::span<const BBox> boxes,
                                       const Raster& raster, int bits) {
  std::vector<QuantizedColor> strips;
  for (const BBox& box : boxes) {
    PixelRect strip = BottomStrip(raster, box);
    if (strip.empty()) return std::nullopt;
    strips.push_back(DominantColor(raster, strip, bits));
  }
  return FindColorOutlier(strips);
}

}  // namespace

std::string_view ToString(SelectionRule rule) {
  switch (rule) {
    case SelectionRule::kTintOutlier:
      return "tint_outlier";
    case SelectionRule::kBottomBar:
      return "bottom_bar";
    case SelectionRule::kUniqueText:
      return "unique_text";
  }
  return "unknown";
}

std::optional<size_t> SelectionResult::selected_index() const {
  for (size_t i = 0; i < flags.size(); ++i) {
    if (flags[i] == true) return i;
  }
  return std::nullopt;
}

PixelRect BottomStrip(const Raster& raster, const BBox& box) {
  PixelRect rect = raster.ToPixels(box);
  if (rect.empty()) return rect;
  const int rows = std::max(
      1, static_cast<int>(std::lround(kBottomStripFraction * (rect.y1 - rect.y0))));
  rect.y0 = rect.y1 - rows;
  return rect;
}

SelectionResult SelectTabState(std::span<const BBox> tabs, const Raster* raster,
                               int quantization_bits) {
  if (tabs.size() < 2 || raster == nullptr) return Unset(tabs.size());
  if (auto idx = TintOutlier(tabs, *raster, quantization_bits)) {
    return Pick(tabs.size(), *idx, SelectionRule::kTintOutlier);
  }
  return Unset(tabs.size());
}

SelectionResult SelectSegmentedState(std::span<const DetectedElement> segments,
                                     const Raster* raster,
                                     int quantization_bits) {
  const size_t n = segments.size();
  if (n < 2) return Unset(n);
  if (raster != nullptr) {
    std::vector<BBox> boxes;
    for (const auto& s : segments) boxes.push_back(s.box);
    if (auto idx = TintOutlier(boxes, *raster, quantization_bits)) {
      return Pick(n, *idx, SelectionRule::kTintOutlier);
    }
    if (auto idx = BottomBarOutlier(boxes, *raster, quantization_bits)) {
      return Pick(n, *idx, SelectionRule::kBottomBar);
    }
  }
  std::optional<size_t> with_text;
  for (size_t i = 0; i < n; ++i) {
    if (segments[i].text && !segments[i].text->empty()) {
      if (with_text) return Unset(n);
      with_text = i;
    }
  }
  if (with_text) return Pick(n, *with_text, SelectionRule::kUniqueText);
  return Unset(n);
}

std::vector<std::vector<size_t>> SegmentedControlRows(
    std::span<const DetectedElement> elements, const HeuristicConfig& config) {
  std::vector<size_t> scs;
  for (size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].type == UIType::kSegmentedControl) scs.push_back(i);
  }
  internal::UnionFind rows_of(scs.size());
  for (size_t a = 0; a < scs.size(); ++a) {
    for (size_t b = a + 1; b < scs.size(); ++b) {
      const BBox& ba = elements[scs[a]].box;
      const BBox& bb = elements[scs[b]].box;
      const double shorter = std::min(ba.height(), bb.height());
      if (YOverlap(ba, bb) >= config.sc_row_y_overlap_min * shorter) {
        rows_of.Unite(a, b);
      }
    }
  }
  std::vector<std::vector<size_t>> rows = rows_of.Components();
  for (auto& row : rows) {
    for (size_t& k : row) k = scs[k];
  }
  std::erase_if(rows, [](const auto& row) { return row.size() < 2; });
  for (auto& row : rows) {
    std::sort(row.begin(), row.end(), [&](size_t a, size_t b) {
      return elements[a].box.left() < elements[b].box.left();
    });
  }
  return rows;
}

}  // namespace uisem
