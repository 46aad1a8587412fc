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

#include "uisem/refinement.h"

#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "test_util.h"

namespace uisem {
namespace {

using testing::El;
using testing::Ids;
using testing::TextEl;
using Strings = std::vector<std::string>;

TEST(FilterTest, DropsBelowClassThreshold) {
  HeuristicConfig c;
  c.per_class_conf_threshold = {{UIType::kText, 0.5}};
  const std::vector<DetectedElement> in = {
      El("a", UIType::kText, 0.1, 0.1, 0.2, 0.2, 0.4),
      El("b", UIType::kText, 0.3, 0.1, 0.4, 0.2, 0.6)};
  std::vector<std::string> warnings;
  EXPECT_EQ(Ids(FilterByConfidence(in, c, &warnings)), Strings{"b"});
  EXPECT_TRUE(warnings.empty());
}

TEST(FilterTest, MissingThresholdKeepsAndWarns) {
  HeuristicConfig c;
  c.per_class_conf_threshold = {{UIType::kText, 0.5}};
  const std::vector<DetectedElement> in = {El("i", UIType::kIcon, 0.1, 0.1, 0.2, 0.2, 0.01)};
  std::vector<std::string> warnings;
  EXPECT_EQ(FilterByConfidence(in, c, &warnings).size(), 1u);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(NmsTest, KeepsOnlyMostConfidentOfMutualOverlaps) {
  // Three boxes shifted so that every pair has IoU >= 0.6.
  const std::vector<DetectedElement> in = {
      El("a", UIType::kIcon, 0.100, 0.1, 0.300, 0.3, 0.7),
      El("b", UIType::kIcon, 0.110, 0.1, 0.310, 0.3, 0.9),
      El("c", UIType::kIcon, 0.120, 0.1, 0.320, 0.3, 0.8)};
  EXPECT_EQ(Ids(NmsWithinClass(in, 0.5)), Strings{"b"});
}

TEST(NmsTest, DifferentClassesDoNotSuppress) {
  const std::vector<DetectedElement> in = {
      El("a", UIType::kIcon, 0.1, 0.1, 0.3, 0.3, 0.7),
      El("b", UIType::kText, 0.1, 0.1, 0.3, 0.3, 0.9)};
  EXPECT_EQ(NmsWithinClass(in, 0.5).size(), 2u);
}

TEST(DedupTest, IconPictureDuplicateKeepsMoreConfident) {
  HeuristicConfig c;
  const std::vector<DetectedElement> in = {
      El("icon", UIType::kIcon, 0.100, 0.1, 0.300, 0.3, 0.9),
      El("pic", UIType::kPicture, 0.105, 0.1, 0.300, 0.3, 0.6)};
  ASSERT_GT(Iou(in[0].box, in[1].box), 0.9);
  EXPECT_EQ(Ids(DedupCrossClass(in, c)), Strings{"icon"});
}

TEST(DedupTest, SmallIconInsidePictureSurvives) {
  HeuristicConfig c;
  const std::vector<DetectedElement> in = {
      El("pic", UIType::kPicture, 0.1, 0.1, 0.9, 0.5, 0.9),
      El("icon", UIType::kIcon, 0.4, 0.2, 0.5, 0.25, 0.8)};
  EXPECT_EQ(DedupCrossClass(in, c).size(), 2u);
}

TEST(DedupTest, TypesOutsideAGroupAreNeverDeduplicated) {
  HeuristicConfig c;
  const std::vector<DetectedElement> in = {
      El("t", UIType::kText, 0.100, 0.1, 0.300, 0.3, 0.9),
      El("i", UIType::kIcon, 0.105, 0.1, 0.300, 0.3, 0.8)};
  EXPECT_EQ(DedupCrossClass(in, c).size(), 2u);
}

TEST(RepairTest, TextOnSegmentedRowBecomesSegment) {
  HeuristicConfig c;
  const std::vector<DetectedElement> in = {
      El("s1", UIType::kSegmentedControl, 0.05, 0.2, 0.30, 0.25),
      El("s2", UIType::kSegmentedControl, 0.30, 0.2, 0.55, 0.25),
      El("s3", UIType::kSegmentedControl, 0.55, 0.2, 0.80, 0.25),
      TextEl("t", 0.83, 0.21, 0.95, 0.24, "More")};
  const auto out = RepairSegmentedControls(in, c);
  EXPECT_EQ(out[3].type, UIType::kSegmentedControl);
  // Text inside a segment is its label, not a missed segment.
  const std::vector<DetectedElement> inside = {
      El("s1", UIType::kSegmentedControl, 0.05, 0.2, 0.30, 0.25),
      TextEl("t", 0.10, 0.21, 0.20, 0.24, "Day")};
  EXPECT_EQ(RepairSegmentedControls(inside, c)[1].type, UIType::kText);
}

TEST(MergeOcrTest, DisjointLineBecomesText) {
  const std::vector<DetectedElement> in = {El("i", UIType::kIcon, 0.1, 0.1, 0.2, 0.2)};
  const std::vector<OcrText> ocr = {{BBox(0.5, 0.5, 0.8, 0.53), "Hello"}};
  const auto out = MergeOcr(in, ocr);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[1].type, UIType::kText);
  EXPECT_EQ(out[1].text, "Hello");
  EXPECT_DOUBLE_EQ(out[1].confidence, 1.0);
}

TEST(MergeOcrTest, IdenticalBoxAttachesText) {
  const std::vector<DetectedElement> in = {El("t", UIType::kText, 0.1, 0.1, 0.5, 0.13)};
  const std::vector<OcrText> ocr = {{BBox(0.1, 0.1, 0.5, 0.13), "Title"}};
  const auto out = MergeOcr(in, ocr);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].text, "Title");
}

TEST(MergeOcrTest, LineOverlappingOnlyAnIconIsDiscarded) {
  const std::vector<DetectedElement> in = {El("i", UIType::kIcon, 0.1, 0.1, 0.2, 0.2)};
  const std::vector<OcrText> ocr = {{BBox(0.15, 0.15, 0.4, 0.18), "x"}};
  const auto out = MergeOcr(in, ocr);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_FALSE(out[0].text.has_value());
}

std::vector<DetectedElement> RandomDetections(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> pos(0.0, 0.8);
  std::uniform_real_distribution<double> size(0.03, 0.2);
  std::uniform_real_distribution<double> conf(0.0, 1.0);
  const UIType types[] = {UIType::kIcon, UIType::kPicture, UIType::kText,
                          UIType::kSegmentedControl, UIType::kContainer};
  std::vector<DetectedElement> out;
  for (int i = 0; i < n; ++i) {
    const double l = pos(rng), t = pos(rng);
    out.push_back(El("e" + std::to_string(i), types[rng() % 5], l, t, l + size(rng),
                     t + size(rng), conf(rng)));
  }
  return out;
}

TEST(RefinePropertyTest, EachStageIsIdempotent) {
  std::mt19937_64 rng(3);
  HeuristicConfig c;
  for (int trial = 0; trial < 300; ++trial) {
    const auto in = RandomDetections(rng, 1 + static_cast<int>(rng() % 25));
    const std::vector<OcrText> ocr = {{BBox(0.85, 0.85, 0.99, 0.88), "tail"},
                                      {BBox(0.3, 0.3, 0.5, 0.33), "mid"}};
    const auto filtered = FilterByConfidence(in, c);
    EXPECT_EQ(FilterByConfidence(filtered, c), filtered);
    const auto nms = NmsWithinClass(in, c.nms_iou);
    EXPECT_EQ(NmsWithinClass(nms, c.nms_iou), nms);
    EXPECT_LE(nms.size(), in.size());
    const auto dedup = DedupCrossClass(in, c);
    EXPECT_EQ(DedupCrossClass(dedup, c), dedup);
    EXPECT_LE(dedup.size(), in.size());
    const auto repaired = RepairSegmentedControls(in, c);
    EXPECT_EQ(RepairSegmentedControls(repaired, c), repaired);
    EXPECT_EQ(repaired.size(), in.size());
    const auto merged = MergeOcr(in, ocr);
    EXPECT_EQ(MergeOcr(merged, ocr), merged);
    EXPECT_GE(merged.size(), in.size());
  }
}

TEST(RefinePropertyTest, StageCountsBalance) {
  std::mt19937_64 rng(4);
  HeuristicConfig c;
  for (int trial = 0; trial < 300; ++trial) {
    const auto in = RandomDetections(rng, 1 + static_cast<int>(rng() % 25));
    const std::vector<OcrText> ocr = {{BBox(0.85, 0.85, 0.99, 0.88), "tail"}};
    const auto once = Refine(in, ocr, c);
    ASSERT_EQ(once.stages.size(), 5u);
    for (const auto& s : once.stages) EXPECT_TRUE(s.Balanced()) << s.stage;
    EXPECT_EQ(once.stages.front().elements_in, static_cast<int>(in.size()));
    EXPECT_EQ(once.stages.back().elements_out, static_cast<int>(once.elements.size()));
  }
}

TEST(RefinePropertyTest, NmsMatchesBruteForceKeepSet) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    auto in = RandomDetections(rng, 1 + static_cast<int>(rng() % 8));
    const auto kept = oracle::BruteForceKeepSet(
        in, [](const DetectedElement& a, const DetectedElement& b) {
          return a.type == b.type && Iou(a.box, b.box) >= 0.5;
        });
    ASSERT_EQ(kept.size(), in.size());
    std::vector<std::string> expected;
    for (size_t i = 0; i < in.size(); ++i) {
      if (kept[i]) expected.push_back(in[i].id);
    }
    EXPECT_EQ(Ids(NmsWithinClass(in, 0.5)), expected);
  }
}

}  // namespace
}  // namespace uisem
