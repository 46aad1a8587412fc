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

#ifndef UISEM_EVALUATION_H_
#define UISEM_EVALUATION_H_

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "uisem/model.h"

namespace uisem {

// ---------------------------------------------------------------------------
// Detection matching

enum class MatchCriterion {
  kIouOverHalf,  // IoU strictly above MatchSpec::iou_threshold
  kCenterHit,    // prediction center inside the ground-truth box
};

std::string_view ToString(MatchCriterion criterion);

struct MatchSpec {
  MatchCriterion criterion = MatchCriterion::kIouOverHalf;
  double iou_threshold = 0.5;
};

bool Satisfies(const MatchSpec& spec, const BBox& pred, const BBox& gt);

struct MatchResult {
  std::vector<std::pair<size_t, size_t>> pairs;  // (prediction, ground truth)
  // Unmatched predictions that satisfy the criterion with an already matched
  // ground truth of their class.
  std::vector<size_t> duplicates;
  // Unmatched predictions with no qualifying ground truth.
  std::vector<size_t> false_positives;
  std::vector<size_t> missed;  // unmatched ground truths
  std::vector<bool> pred_is_tp;
};

// Greedy in confidence order (input order on ties): each prediction takes
// the qualifying unmatched ground truth of its own class with the highest
// IoU (lowest index on ties).
MatchResult MatchDetections(std::span<const DetectedElement> preds,
                            std::span<const DetectedElement> gts,
                            const MatchSpec& spec);

// ---------------------------------------------------------------------------
// Average precision

// Predictions and ground truth of one screen.
struct EvalScreen {
  std::string screen_id;
  std::vector<DetectedElement> preds;
  std::vector<DetectedElement> gts;
};

struct PrPoint {
  double confidence = 0;
  double precision = 0;
  double recall = 0;
};

// (confidence, is true positive) for every prediction of one class.
using ScoredDetection = std::pair<double, bool>;

// Precision/recall after each run of tied confidences, descending.
std::vector<PrPoint> PrCurve(std::span<const ScoredDetection> detections,
                             int num_gt);

// Area under the all-points interpolated precision/recall curve. Tied
// confidences enter together. Requires num_gt > 0.
double AllPointsAp(std::span<const ScoredDetection> detections, int num_gt);

struct ClassAp {
  UIType type = UIType::kOther;
  int num_gt = 0;
  int num_pred = 0;
  std::optional<double> ap;  // undefined without ground truth
  std::vector<PrPoint> curve;
};

struct ApReport {
  MatchSpec spec;
  std::vector<ClassAp> per_class;
  std::optional<double> mean_ap;           // unweighted over defined classes
  std::optional<double> weighted_mean_ap;  // weighted by ground-truth count
  std::vector<UIType> undefined;           // classes without ground truth
};

ApReport AveragePrecision(std::span<const EvalScreen> screens,
                          const MatchSpec& spec);

// ---------------------------------------------------------------------------
// Confusion matrix

struct ConfusionMatrix {
  // cells[gt][pred], indexed by UIType.
  std::array<std::array<int, kNumUITypes>, kNumUITypes> cells{};
  std::array<int, kNumUITypes> missed{};  // per ground-truth class
  // Per predicted class: predictions without a matched ground truth.
  // Duplicates are the subset of those overlapping an already matched one.
  std::array<int, kNumUITypes> no_gt{};
  std::array<int, kNumUITypes> duplicate{};

  int at(UIType gt, UIType pred) const {
    return cells[static_cast<size_t>(gt)][static_cast<size_t>(pred)];
  }
  void Add(const ConfusionMatrix& other);
};

// Class-agnostic greedy IoU matching.
ConfusionMatrix ComputeConfusion(std::span<const DetectedElement> preds,
                                 std::span<const DetectedElement> gts,
                                 double iou_threshold = 0.5);

// ---------------------------------------------------------------------------
// Threshold tuning

struct ThresholdChoice {
  UIType type = UIType::kOther;
  double threshold = 0.0;
  double f_beta = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  std::optional<std::string> warning;
};

double FBeta(double precision, double recall, double beta);

// Per detector class, the observed confidence maximizing F-beta when
// predictions at or above it are kept (smallest such confidence on ties).
std::vector<ThresholdChoice> TuneThresholds(std::span<const EvalScreen> screens,
                                            double beta, const MatchSpec& spec);

// ---------------------------------------------------------------------------
// Grouping and ordering

struct GroupingStats {
  int screens = 0;
  int elements = 0;
  int top_level_nodes = 0;
  double reduction = 0.0;  // 1 - top_level_nodes / elements
  int groups_made = 0;     // produced groups with two or more elements
  int correct_groups = 0;  // produced groups equal to a truth group
  int incorrectly_grouped = 0;
  int truth_groups = 0;
  int recovered_groups = 0;  // truth groups reproduced exactly
  int should_have_grouped = 0;
  std::map<NodeKind, int> incorrect_by_kind;
  std::map<NodeKind, int> should_have_by_kind;
};

// Groups are compared as sets of element ids (a container's own detection
// included). A produced group is incorrect when no truth group contains all
// of its elements; a truth group is a should-have-grouped error when no
// produced group contains all of its elements. Single-element groups are
// ignored on both sides. Trees pair up by position and must agree on
// screen and element ids (IdMismatchError otherwise).
GroupingStats GroupingMetrics(std::span<const AccessibilityTree> produced,
                              std::span<const AccessibilityTree> truth);

struct OrderingStats {
  int screens = 0;
  int perfect = 0;
  // Screens with distance * 10 < elements.
  int under_one_per_ten = 0;
  double mean_distance = 0.0;
  std::vector<int> distances;

  double perfect_fraction() const;
  double under_one_per_ten_fraction() const;
};

OrderingStats OrderingMetrics(std::span<const std::vector<std::string>> produced,
                              std::span<const std::vector<std::string>> truth);

nlohmann::json ToJson(const ApReport& report);
nlohmann::json ToJson(const ConfusionMatrix& matrix);
nlohmann::json ToJson(const GroupingStats& stats);
nlohmann::json ToJson(const OrderingStats& stats);

}  // namespace uisem

#endif  // UISEM_EVALUATION_H_
