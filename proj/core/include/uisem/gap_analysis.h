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

#ifndef UISEM_GAP_ANALYSIS_H_
#define UISEM_GAP_ANALYSIS_H_

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "uisem/config.h"
#include "uisem/model.h"

namespace uisem {

// An element an app exposes to assistive technologies.
struct ExposedElement {
  std::string id;
  BBox box;

  bool operator==(const ExposedElement&) const = default;
};

using ExposedByScreen = std::map<std::string, std::vector<ExposedElement>>;

// Exposed elements file: { "<screen_id>": [ {id, box: {l, t, r, b}} ] }.
ExposedByScreen ExposedFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const ExposedByScreen& exposed);

enum class GapCategory {
  kMatched,
  kContainedAmbiguous,    // contained, but every container holds others too
  kOverlappingAmbiguous,  // overlaps without being contained
  kUnmatched,
};

std::string_view ToString(GapCategory category);

struct AnnotationMatch {
  std::string annotation_id;
  UIType type = UIType::kOther;
  GapCategory category = GapCategory::kUnmatched;
  // The exposed element matched one-to-one, if any.
  std::optional<std::string> exposed_id;
  // Matched only through the icon alignment exception.
  bool via_icon_exception = false;

  bool operator==(const AnnotationMatch&) const = default;
};

struct ScreenGap {
  std::string screen_id;
  std::vector<AnnotationMatch> annotations;  // in input order
  int excluded_fullscreen = 0;

  int count(GapCategory category) const;
  // Percentage of matched annotations; nullopt without annotations.
  std::optional<double> match_percentage() const;
};

// Annotation A is contained by exposed box B when at least
// containment_match of A's area lies in B, and overlaps B when their IoU is
// at least overlap_match_iou. Exposed boxes covering fullscreen_area of the
// screen or more are ignored. A is matched when some container of A holds
// no other annotation; otherwise it is contained-ambiguous, else
// overlapping-ambiguous, else unmatched. An Icon that is not matched is
// promoted to matched when it vertically overlaps (at least half of the
// smaller height) a matched Text that is not independently clickable.
ScreenGap AnalyzeGaps(const std::string& screen_id,
                      std::span<const DetectedElement> annotations,
                      std::span<const ExposedElement> exposed,
                      const HeuristicConfig& config);

struct GapSummary {
  int screens = 0;
  int screens_without_annotations = 0;
  int screens_fully_matched = 0;
  int annotations = 0;
  std::map<GapCategory, int> by_category;
  // Screens per match percentage: [0,10), [10,20), ..., [90,100), 100.
  std::array<int, 11> histogram{};
  // Non-matched annotations per type.
  std::map<UIType, int> unmatched_by_type;
};

GapSummary SummarizeGaps(std::span<const ScreenGap> screens);

// Histogram bin of a match percentage in [0, 100].
int HistogramBin(double percentage);

nlohmann::json ToJson(const ScreenGap& gap);
nlohmann::json ToJson(const GapSummary& summary);
std::string HistogramCsv(const GapSummary& summary);
std::string UnmatchedByTypeCsv(const GapSummary& summary);

}  // namespace uisem

#endif  // UISEM_GAP_ANALYSIS_H_
