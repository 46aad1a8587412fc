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

#include "uisem/raster.h"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>

#include "uisem/errors.h"

namespace uisem {

Raster::Raster(int width, int height, Rgb fill)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("raster dimensions must be positive");
  }
  rgba_.resize(static_cast<size_t>(width) * height * 4);
  FillRect({0, 0, width, height}, fill);
}

Rgb Raster::at(int x, int y) const {
  const size_t i = (static_cast<size_t>(y) * width_ + x) * 4;
  return {rgba_[i], rgba_[i + 1], rgba_[i + 2]};
}

void Raster::set(int x, int y, Rgb color) {
  const size_t i = (static_cast<size_t>(y) * width_ + x) * 4;
  rgba_[i] = color.r;
  rgba_[i + 1] = color.g;
  rgba_[i + 2] = color.b;
  rgba_[i + 3] = 255;
}

void Raster::FillRect(const PixelRect& rect, Rgb color) {
  const int x0 = std::max(rect.x0, 0);
  const int y0 = std::max(rect.y0, 0);
  const int x1 = std::min(rect.x1, width_);
  const int y1 = std::min(rect.y1, height_);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) set(x, y, color);
  }
}

void Raster::FillBox(const BBox& box, Rgb color) { FillRect(ToPixels(box), color); }

PixelRect Raster::ToPixels(const BBox& box) const {
  auto px = [](double v, int extent) {
    return std::clamp(static_cast<int>(std::lround(v * extent)), 0, extent);
  };
  return {px(box.left(), width_), px(box.top(), height_),
          px(box.right(), width_), px(box.bottom(), height_)};
}

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

Raster ReadPng(const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (png_image_begin_read_from_file(&image, path.c_str()) == 0) {
    throw IoError("cannot read PNG " + path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGBA;
  const int width = static_cast<int>(image.width);
  const int height = static_cast<int>(image.height);
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
  if (png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr) == 0) {
    std::string msg = image.message;
    png_image_free(&image);
    throw IoError("cannot decode PNG " + path.string() + ": " + msg);
  }
  Raster raster(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const size_t i = (static_cast<size_t>(y) * width + x) * 4;
      raster.set(x, y, {buffer[i], buffer[i + 1], buffer[i + 2]});
    }
  }
  return raster;
}

void WritePng(const Raster& raster, const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(raster.width());
  image.height = static_cast<png_uint_32>(raster.height());
  image.format = PNG_FORMAT_RGBA;
  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  if (png_image_write_to_stdio(&image, file.get(), 0, raster.rgba().data(), 0,
                               nullptr) == 0) {
    throw IoError("cannot encode PNG " + path.string() + ": " + image.message);
  }
}

}  // namespace uisem
