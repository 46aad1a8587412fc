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

#include "uisem/geometry.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace uisem {
namespace {

double Clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

bool ValidCorners(double left, double top, double right, double bottom) {
  return std::isfinite(left) && std::isfinite(top) && std::isfinite(right) &&
         std::isfinite(bottom) && left < right && top < bottom;
}

}  // namespace

BBox::BBox(double left, double top, double right, double bottom)
    : left_(left), top_(top), right_(right), bottom_(bottom) {
  if (!ValidCorners(left, top, right, bottom)) {
    std::ostringstream msg;
    msg << "degenerate box (" << left << ", " << top << ", " << right << ", "
        << bottom << ")";
    throw std::invalid_argument(msg.str());
  }
}

BBox BBox::FromPixels(double left, double top, double right, double bottom,
                      int width_px, int height_px) {
  if (width_px <= 0 || height_px <= 0) {
    throw std::invalid_argument("non-positive screen dimensions");
  }
  const double w = width_px;
  const double h = height_px;
  return BBox(left / w, top / h, right / w, bottom / h);
}

std::optional<BBox> BBox::TryMake(double left, double top, double right,
                                  double bottom) {
  if (!ValidCorners(left, top, right, bottom)) return std::nullopt;
  return BBox(left, top, right, bottom);
}

BBox BBox::Union(const BBox& other) const {
  return BBox(std::min(left_, other.left_), std::min(top_, other.top_),
              std::max(right_, other.right_), std::max(bottom_, other.bottom_));
}

std::optional<BBox> BBox::ClampedToUnit() const {
  return TryMake(Clamp01(left_), Clamp01(top_), Clamp01(right_),
                 Clamp01(bottom_));
}

std::string BBox::ToString() const {
  std::ostringstream out;
  out << "[" << left_ << ", " << top_ << ", " << right_ << ", " << bottom_
      << "]";
  return out.str();
}

double XOverlap(const BBox& a, const BBox& b) {
  return std::max(0.0, std::min(a.right(), b.right()) -
                           std::max(a.left(), b.left()));
}

double YOverlap(const BBox& a, const BBox& b) {
  return std::max(0.0, std::min(a.bottom(), b.bottom()) -
                           std::max(a.top(), b.top()));
}

double IntersectionArea(const BBox& a, const BBox& b) {
  return XOverlap(a, b) * YOverlap(a, b);
}

double Iou(const BBox& a, const BBox& b) {
  const double inter = IntersectionArea(a, b);
  if (inter <= 0.0) return 0.0;
  const double uni = a.area() + b.area() - inter;
  return Clamp01(inter / uni);
}

double ContainmentFraction(const BBox& inner, const BBox& outer) {
  return Clamp01(IntersectionArea(inner, outer) / inner.area());
}

double XOverlapFraction(const BBox& a, const BBox& b) {
  return Clamp01(XOverlap(a, b) / a.width());
}

bool CenterIn(const BBox& det, const BBox& target) {
  const double cx = det.center_x();
  const double cy = det.center_y();
  return cx >= target.left() && cx <= target.right() && cy >= target.top() &&
         cy <= target.bottom();
}

}  // namespace uisem
