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

#ifndef UISEM_RASTER_H_
#define UISEM_RASTER_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "uisem/geometry.h"

namespace uisem {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  bool operator==(const Rgb&) const = default;
  auto operator<=>(const Rgb&) const = default;
};

// Pixel rectangle, half-open: [x0, x1) x [y0, y1).
struct PixelRect {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  bool empty() const { return x1 <= x0 || y1 <= y0; }
  long long pixel_count() const {
    return empty() ? 0 : static_cast<long long>(x1 - x0) * (y1 - y0);
  }
};

// RGBA8 pixel grid, row-major.
class Raster {
 public:
  Raster(int width, int height, Rgb fill = {});

  int width() const { return width_; }
  int height() const { return height_; }

  Rgb at(int x, int y) const;
  void set(int x, int y, Rgb color);

  // Fills the intersection of `rect` with the raster.
  void FillRect(const PixelRect& rect, Rgb color);
  // Fills a normalized box, rounded to the nearest pixel edges.
  void FillBox(const BBox& box, Rgb color);

  // Rounds a normalized box to pixel edges and clips it to the raster.
  PixelRect ToPixels(const BBox& box) const;

  const std::vector<std::uint8_t>& rgba() const { return rgba_; }

  bool operator==(const Raster&) const = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> rgba_;
};

// PNG I/O (8-bit RGBA). Both throw IoError on failure.
Raster ReadPng(const std::filesystem::path& path);
void WritePng(const Raster& raster, const std::filesystem::path& path);

}  // namespace uisem

#endif  // UISEM_RASTER_H_
