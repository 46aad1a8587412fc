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

#ifndef UISEM_CONFIG_H_
#define UISEM_CONFIG_H_

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "uisem/model.h"

namespace uisem {

// Every tunable constant of the pipeline and its evaluation, in one record.
// Lengths are fractions of the screen (normalized coordinates).
struct HeuristicConfig {
  // Detections below their class threshold are dropped. A missing class is
  // treated as 0 (keep everything) with a warning.
  std::map<UIType, double> per_class_conf_threshold = DefaultThresholds();

  // Greedy within-class NMS.
  double nms_iou = 0.5;

  // Cross-class duplicate removal among visually similar types. Only pairs
  // with IoU strictly above dedup_iou are duplicates, so nested detections
  // (a small Icon inside a large Picture) survive.
  double dedup_iou = 0.8;
  std::vector<std::vector<UIType>> dedup_groups = {
      {UIType::kPicture, UIType::kIcon},
      {UIType::kSegmentedControl, UIType::kTextField, UIType::kContainer},
  };

  // Tab bar: candidates start in the bottom tab_zone_fraction of the screen
  // and lie within tab_height_tolerance of the bottom-most detection.
  double tab_zone_fraction = 0.20;
  double tab_height_tolerance = 0.08;

  // Picture subtitles.
  double subtitle_y_gap = 0.03;
  double subtitle_x_overlap_min = 0.5;

  // Annotation / exposed-element matching.
  double containment_match = 0.85;
  double overlap_match_iou = 0.05;
  double fullscreen_area = 0.98;

  double clickability_target_precision = 0.90;

  // A Text is on a segmented-control row when its vertical overlap with a
  // segment is at least this fraction of the text's height.
  double sc_row_y_overlap_min = 0.5;

  // Minimum containment fraction for an element to join a Container group.
  double container_membership = 0.85;

  int tint_quantization_bits = 5;

  // Whitespace bands narrower than this do not split XY-cut segments; tops
  // closer than this are ties ordered left-to-right.
  double order_epsilon = 1e-6;

  // Detection evaluation: a prediction matches with IoU strictly above this.
  double match_iou = 0.5;

  static std::map<UIType, double> DefaultThresholds();

  // Human-readable violations of the record's invariants; empty when valid.
  std::vector<std::string> Validate() const;

  bool operator==(const HeuristicConfig&) const = default;
};

nlohmann::json ToJson(const HeuristicConfig& config);

// Applies the fields present in `overlay` on top of `base`. Unknown keys and
// mistyped values throw SchemaError.
HeuristicConfig ApplyConfigOverlay(const HeuristicConfig& base,
                                   const nlohmann::json& overlay);

}  // namespace uisem

#endif  // UISEM_CONFIG_H_
