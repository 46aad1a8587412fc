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

#ifndef UISEM_TINT_H_
#define UISEM_TINT_H_

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "uisem/geometry.h"
#include "uisem/raster.h"

namespace uisem {

// A color after dropping the low bits of each channel; channel values are in
// [0, 2^bits).
struct QuantizedColor {
  int r = 0;
  int g = 0;
  int b = 0;

  bool operator==(const QuantizedColor&) const = default;
  auto operator<=>(const QuantizedColor&) const = default;
};

QuantizedColor Quantize(Rgb color, int bits);

// Euclidean distance in quantized units (one unit = one quantization step).
double ColorDistance(const QuantizedColor& a, const QuantizedColor& b);

struct TintProfile {
  QuantizedColor background;
  QuantizedColor tint;
  // Share of the crop's pixels carrying the tint color; 0 for a monochrome
  // crop, where tint == background.
  double tint_weight = 0.0;

  bool operator==(const TintProfile&) const = default;
};

class MissingRasterError : public std::runtime_error {
 public:
  MissingRasterError() : std::runtime_error("screen has no raster") {}
};

class EmptyCropError : public std::runtime_error {
 public:
  EmptyCropError() : std::runtime_error("box is empty after pixel rounding") {}
};

// Most frequent quantized color is the background, second most frequent the
// tint. Frequency ties resolve to the smaller color.
TintProfile ExtractTint(const Raster* raster, const BBox& box, int bits);

// Most frequent quantized color of a pixel rectangle.
QuantizedColor DominantColor(const Raster& raster, const PixelRect& rect,
                             int bits);

// Index of the unique outlier: the point whose summed distance to all others
// exceeds every other point's sum by more than one quantization step.
// nullopt with fewer than two points or without a unique outlier.
std::optional<size_t> FindColorOutlier(std::span<const QuantizedColor> colors);

}  // namespace uisem

#endif  // UISEM_TINT_H_
