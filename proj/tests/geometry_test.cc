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

#include <random>

#include <gtest/gtest.h>

namespace uisem {
namespace {

TEST(BBoxTest, RejectsDegenerateAndNonFinite) {
  EXPECT_THROW(BBox(0.5, 0.1, 0.4, 0.2), std::invalid_argument);
  EXPECT_THROW(BBox(0.1, 0.1, 0.1, 0.2), std::invalid_argument);
  EXPECT_THROW(BBox(0.0, 0.0, std::numeric_limits<double>::infinity(), 1.0),
               std::invalid_argument);
  EXPECT_FALSE(BBox::TryMake(0.0, 0.3, 1.0, 0.2).has_value());
  EXPECT_TRUE(BBox::TryMake(0.0, 0.2, 1.0, 0.3).has_value());
}

TEST(BBoxTest, FromPixelsNormalizes) {
  const BBox b = BBox::FromPixels(36, 72, 180, 144, 360, 720);
  EXPECT_DOUBLE_EQ(b.left(), 0.1);
  EXPECT_DOUBLE_EQ(b.top(), 0.1);
  EXPECT_DOUBLE_EQ(b.right(), 0.5);
  EXPECT_DOUBLE_EQ(b.bottom(), 0.2);
}

TEST(BBoxTest, ClampedToUnit) {
  auto c = BBox(-0.1, 0.2, 1.02, 0.4).ClampedToUnit();
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(*c, BBox(0.0, 0.2, 1.0, 0.4));
  EXPECT_FALSE(BBox(1.1, 0.2, 1.3, 0.4).ClampedToUnit().has_value());
}

TEST(GeometryTest, IouOfHalfOverlappingSquares) {
  // Scaled (0,0,2,2) vs (1,0,3,2): intersection 2, union 6.
  const BBox a(0.0, 0.0, 0.2, 0.2);
  const BBox b(0.1, 0.0, 0.3, 0.2);
  EXPECT_NEAR(Iou(a, b), 1.0 / 3.0, 1e-12);
}

TEST(GeometryTest, IouDisjointAndIdentical) {
  const BBox a(0.0, 0.0, 0.1, 0.1);
  EXPECT_DOUBLE_EQ(Iou(a, BBox(0.5, 0.5, 0.6, 0.6)), 0.0);
  EXPECT_DOUBLE_EQ(Iou(a, a), 1.0);
  // Touching edges share no area.
  EXPECT_DOUBLE_EQ(Iou(a, BBox(0.1, 0.0, 0.2, 0.1)), 0.0);
}

TEST(GeometryTest, ContainmentOfHalfInside) {
  const BBox inner(0.0, 0.0, 0.2, 0.2);
  const BBox outer(0.1, 0.0, 0.5, 0.5);
  EXPECT_NEAR(ContainmentFraction(inner, outer), 0.5, 1e-12);
  EXPECT_DOUBLE_EQ(ContainmentFraction(inner, BBox(0.0, 0.0, 1.0, 1.0)), 1.0);
}

TEST(GeometryTest, XOverlap) {
  EXPECT_NEAR(XOverlap(BBox(0.0, 0.0, 0.5, 0.1), BBox(0.3, 0.5, 0.8, 0.6)), 0.2, 1e-12);
  EXPECT_DOUBLE_EQ(XOverlap(BBox(0.0, 0.0, 0.2, 0.1), BBox(0.3, 0.0, 0.4, 0.1)), 0.0);
}

TEST(GeometryTest, XOverlapFractionIsRelativeToFirst) {
  const BBox a(0.2, 0.0, 0.6, 0.1);
  const BBox b(0.4, 0.0, 1.0, 0.1);
  EXPECT_NEAR(XOverlapFraction(a, b), 0.5, 1e-12);
  EXPECT_NEAR(XOverlapFraction(b, a), 0.2 / 0.6, 1e-12);
}

TEST(GeometryTest, CenterInIncludesEdges) {
  const BBox target(0.0, 0.0, 0.5, 0.5);
  // Detection centered exactly on the target's corner.
  EXPECT_TRUE(CenterIn(BBox(0.4, 0.4, 0.6, 0.6), target));
  EXPECT_FALSE(CenterIn(BBox(0.5, 0.5, 0.7, 0.7), target));
}

TEST(GeometryTest, UnionCoversBoth) {
  const BBox u = BBox(0.1, 0.2, 0.3, 0.4).Union(BBox(0.25, 0.05, 0.6, 0.3));
  EXPECT_EQ(u, BBox(0.1, 0.05, 0.6, 0.4));
}

// Properties over random boxes.
TEST(GeometryPropertyTest, IouSymmetricAndBounded) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto random_box = [&] {
    double l = u(rng), r = u(rng), t = u(rng), b = u(rng);
    if (l > r) std::swap(l, r);
    if (t > b) std::swap(t, b);
    return BBox(l, t, r + 1e-3, b + 1e-3);
  };
  for (int i = 0; i < 2000; ++i) {
    const BBox a = random_box();
    const BBox b = random_box();
    const double iou = Iou(a, b);
    EXPECT_GE(iou, 0.0);
    EXPECT_LE(iou, 1.0);
    EXPECT_DOUBLE_EQ(iou, Iou(b, a));
    EXPECT_NEAR(Iou(a, a), 1.0, 1e-12);
    const double c = ContainmentFraction(a, b);
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0 + 1e-12);
    // IoU never exceeds either containment fraction.
    EXPECT_LE(iou, c + 1e-12);
    EXPECT_LE(iou, ContainmentFraction(b, a) + 1e-12);
    EXPECT_LE(XOverlap(a, b), std::min(a.width(), b.width()) + 1e-12);
  }
}

}  // namespace
}  // namespace uisem
