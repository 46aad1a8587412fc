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

#include "uisem/tint.h"

#include <algorithm>
#include <cmath>
#include <map>

namespace uisem {
namespace {

std::vector<std::pair<QuantizedColor, long long>> Histogram(
    const Raster& raster, const PixelRect& rect, int bits) {
  std::map<QuantizedColor, long long> counts;
  for (int y = rect.y0; y < rect.y1; ++y) {
    for (int x = rect.x0; x < rect.x1; ++x) {
      ++counts[Quantize(raster.at(x, y), bits)];
    }
  }
  std::vector<std::pair<QuantizedColor, long long>> ranked(counts.begin(),
                                                           counts.end());
  // Map order makes ties resolve to the smaller color.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return ranked;
}

}  // namespace

QuantizedColor Quantize(Rgb color, int bits) {
  const int shift = 8 - bits;
  return {color.r >> shift, color.g >> shift, color.b >> shift};
}

double ColorDistance(const QuantizedColor& a, const QuantizedColor& b) {
  const double dr = a.r - b.r;
  const double dg = a.g - b.g;
  const double db = a.b - b.b;
  return std::sqrt(dr * dr + dg * dg + db * db);
}

TintProfile ExtractTint(const Raster* raster, const BBox& box, int bits) {
  if (raster == nullptr) throw MissingRasterError();
  const PixelRect rect = raster->ToPixels(box);
  if (rect.empty()) throw EmptyCropError();
  auto ranked = Histogram(*raster, rect, bits);
  TintProfile profile{.background = ranked[0].first, .tint = ranked[0].first};
  if (ranked.size() > 1) {
    profile.tint = ranked[1].first;
    profile.tint_weight = static_cast<double>(ranked[1].second) /
                          static_cast<double>(rect.pixel_count());
  }
  return profile;
}

QuantizedColor DominantColor(const Raster& raster, const PixelRect& rect,
                             int bits) {
  if (rect.empty()) throw EmptyCropError();
  return Histogram(raster, rect, bits).front().first;
}

std::optional<size_t> FindColorOutlier(std::span<const QuantizedColor> colors) {
  if (colors.size() < 2) return std::nullopt;
  std::vector<double> sums(colors.size(), 0.0);
  for (size_t i = 0; i < colors.size(); ++i) {
    for (size_t j = 0; j < colors.size(); ++j) {
      sums[i] += ColorDistance(colors[i], colors[j]);
    }
  }
  const size_t best = static_cast<size_t>(
      std::max_element(sums.begin(), sums.end()) - sums.begin());
  constexpr double kStep = 1.0;
  for (size_t k = 0; k < sums.size(); ++k) {
    if (k != best && !(sums[best] > sums[k] + kStep)) return std::nullopt;
  }
  return best;
}

}  // namespace uisem
