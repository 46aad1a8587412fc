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

#ifndef UISEM_GEOMETRY_H_
#define UISEM_GEOMETRY_H_

#include <optional>
#include <stdexcept>
#include <string>

namespace uisem {

// Axis-aligned rectangle in normalized screen coordinates (origin top-left,
// y grows downwards). A BBox is never degenerate: left < right and
// top < bottom, all coordinates finite. Clamping to [0,1] happens at
// ingestion (see ValidateScreen), not here, so that geometry stays exact for
// scaled or synthetic inputs.
class BBox {
 public:
  // Throws std::invalid_argument for non-finite or degenerate input.
  BBox(double left, double top, double right, double bottom);

  // Divides pixel coordinates by the screen dimensions.
  static BBox FromPixels(double left, double top, double right, double bottom,
                         int width_px, int height_px);

  // Returns nullopt instead of throwing.
  static std::optional<BBox> TryMake(double left, double top, double right,
                                     double bottom);

  double left() const { return left_; }
  double top() const { return top_; }
  double right() const { return right_; }
  double bottom() const { return bottom_; }

  double width() const { return right_ - left_; }
  double height() const { return bottom_ - top_; }
  double area() const { return width() * height(); }
  double center_x() const { return 0.5 * (left_ + right_); }
  double center_y() const { return 0.5 * (top_ + bottom_); }

  // Smallest box covering both.
  BBox Union(const BBox& other) const;

  // Clamped copy; nullopt when nothing of the box is left inside [0,1]^2.
  std::optional<BBox> ClampedToUnit() const;

  bool operator==(const BBox&) const = default;

  std::string ToString() const;

 private:
  double left_;
  double top_;
  double right_;
  double bottom_;
};

// Area of a∩b, 0 when disjoint.
double IntersectionArea(const BBox& a, const BBox& b);

// area(a∩b) / area(a∪b).
double Iou(const BBox& a, const BBox& b);

// Fraction of `inner`'s area lying inside `outer`.
double ContainmentFraction(const BBox& inner, const BBox& outer);

// Length of the intersection of the horizontal (vertical) projections.
double XOverlap(const BBox& a, const BBox& b);
double YOverlap(const BBox& a, const BBox& b);

// XOverlap(a, b) / width(a): how much of a's width b covers.
double XOverlapFraction(const BBox& a, const BBox& b);

// True iff det's midpoint lies within target, edges inclusive.
bool CenterIn(const BBox& det, const BBox& target);

}  // namespace uisem

#endif  // UISEM_GEOMETRY_H_
