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

#include "uisem/gap_analysis.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uisem/errors.h"
#include "uisem/json_io.h"

namespace uisem {
namespace {

using nlohmann::json;

constexpr std::array<GapCategory, 4> kCategories = {
    GapCategory::kMatched, GapCategory::kContainedAmbiguous,
    GapCategory::kOverlappingAmbiguous, GapCategory::kUnmatched};

bool HorizontallyAligned(const BBox& a, const BBox& b) {
  return YOverlap(a, b) >= 0.5 * std::min(a.height(), b.height());
}

}  // namespace

ExposedByScreen ExposedFromJson(const json& j) {
  if (!j.is_object()) throw SchemaError("exposed elements: expected an object");
  ExposedByScreen out;
  for (const auto& [screen_id, list] : j.items()) {
    if (!list.is_array()) {
      throw SchemaError("exposed elements '" + screen_id + "': expected an array");
    }
    auto& dest = out[screen_id];
    for (const auto& item : list) {
      if (!item.is_object() || !item.contains("id") || !item["id"].is_string() ||
          !item.contains("box")) {
        throw SchemaError("exposed elements '" + screen_id +
                          "': each entry needs a string id and a box");
      }
      dest.push_back({item["id"].get<std::string>(), BoxFromJson(item["box"])});
    }
  }
  return out;
}

json ToJson(const ExposedByScreen& exposed) {
  json out = json::object();
  for (const auto& [screen_id, list] : exposed) {
    json items = json::array();
    for (const auto& e : list) items.push_back({{"id", e.id}, {"box", ToJson(e.box)}});
    out[screen_id] = std::move(items);
  }
  return out;
}

std::string_view ToString(GapCategory category) {
  switch (category) {
    case GapCategory::kMatched:
      return "matched";
    case GapCategory::kContainedAmbiguous:
      return "contained_ambiguous";
    case GapCategory::kOverlappingAmbiguous:
      return "overlapping_ambiguous";
    case GapCategory::kUnmatched:
      return "unmatched";
  }
  return "unmatched";
}

int ScreenGap::count(GapCategory category) const {
  return static_cast<int>(std::count_if(
      annotations.begin(), annotations.end(),
      [&](const AnnotationMatch& m) { return m.category == category; }));
}

std::optional<double> ScreenGap::match_percentage() const {
  if (annotations.empty()) return std::nullopt;
  return 100.0 * count(GapCategory::kMatched) / static_cast<double>(annotations.size());
}

ScreenGap AnalyzeGaps(const std::string& screen_id,
                      std::span<const DetectedElement> annotations,
                      std::span<const ExposedElement> exposed,
                      const HeuristicConfig& config) {
  ScreenGap gap{.screen_id = screen_id};
  std::vector<const ExposedElement*> candidates;
  for (const auto& e : exposed) {
    if (e.box.area() >= config.fullscreen_area) {
      ++gap.excluded_fullscreen;
    } else {
      candidates.push_back(&e);
    }
  }

  // contains[b][a]: exposed b contains annotation a.
  const size_t na = annotations.size();
  std::vector<std::vector<bool>> contains(candidates.size(), std::vector<bool>(na));
  std::vector<int> held(candidates.size(), 0);
  for (size_t b = 0; b < candidates.size(); ++b) {
    for (size_t a = 0; a < na; ++a) {
      contains[b][a] = ContainmentFraction(annotations[a].box, candidates[b]->box) >=
                       config.containment_match;
      held[b] += contains[b][a];
    }
  }

  for (size_t a = 0; a < na; ++a) {
    AnnotationMatch m{.annotation_id = annotations[a].id, .type = annotations[a].type};
    const ExposedElement* sole = nullptr;
    bool contained = false;
    bool overlapping = false;
    for (size_t b = 0; b < candidates.size(); ++b) {
      if (contains[b][a]) {
        contained = true;
        if (held[b] == 1 && (sole == nullptr || candidates[b]->box.area() < sole->box.area())) {
          sole = candidates[b];
        }
      } else if (Iou(annotations[a].box, candidates[b]->box) >= config.overlap_match_iou) {
        overlapping = true;
      }
    }
    if (sole != nullptr) {
      m.category = GapCategory::kMatched;
      m.exposed_id = sole->id;
    } else if (contained) {
      m.category = GapCategory::kContainedAmbiguous;
    } else if (overlapping) {
      m.category = GapCategory::kOverlappingAmbiguous;
    }
    gap.annotations.push_back(std::move(m));
  }

  // Icons next to text that a single exposed element already speaks for.
  std::vector<size_t> promote;
  for (size_t a = 0; a < na; ++a) {
    if (annotations[a].type != UIType::kIcon ||
        gap.annotations[a].category == GapCategory::kMatched) {
      continue;
    }
    for (size_t t = 0; t < na; ++t) {
      if (annotations[t].type == UIType::kText &&
          gap.annotations[t].category == GapCategory::kMatched &&
          annotations[t].clickable_annotated != true &&
          HorizontallyAligned(annotations[a].box, annotations[t].box)) {
        promote.push_back(a);
        break;
      }
    }
  }
  for (size_t a : promote) {
    gap.annotations[a].category = GapCategory::kMatched;
    gap.annotations[a].via_icon_exception = true;
  }
  return gap;
}

int HistogramBin(double percentage) {
  if (percentage >= 100.0) return 10;
  return std::clamp(static_cast<int>(std::floor(percentage / 10.0)), 0, 9);
}

GapSummary SummarizeGaps(std::span<const ScreenGap> screens) {
  GapSummary s;
  for (GapCategory c : kCategories) s.by_category[c] = 0;
  for (const auto& screen : screens) {
    ++s.screens;
    const auto pct = screen.match_percentage();
    if (!pct) {
      ++s.screens_without_annotations;
      continue;
    }
    ++s.histogram[HistogramBin(*pct)];
    s.screens_fully_matched += *pct >= 100.0;
    for (const auto& m : screen.annotations) {
      ++s.annotations;
      ++s.by_category[m.category];
      if (m.category != GapCategory::kMatched) ++s.unmatched_by_type[m.type];
    }
  }
  return s;
}

json ToJson(const ScreenGap& gap) {
  json items = json::array();
  for (const auto& m : gap.annotations) {
    json item{{"id", m.annotation_id},
              {"type", std::string(ToString(m.type))},
              {"category", std::string(ToString(m.category))},
              {"via_icon_exception", m.via_icon_exception}};
    item["exposed_id"] = m.exposed_id ? json(*m.exposed_id) : json(nullptr);
    items.push_back(std::move(item));
  }
  const auto pct = gap.match_percentage();
  return {{"screen_id", gap.screen_id},
          {"annotations", std::move(items)},
          {"excluded_fullscreen", gap.excluded_fullscreen},
          {"match_percentage", pct ? json(*pct) : json(nullptr)}};
}

json ToJson(const GapSummary& s) {
  json categories = json::object();
  for (const auto& [c, n] : s.by_category) categories[std::string(ToString(c))] = n;
  json by_type = json::object();
  for (const auto& [t, n] : s.unmatched_by_type) by_type[std::string(ToString(t))] = n;
  return {{"screens", s.screens},
          {"screens_without_annotations", s.screens_without_annotations},
          {"screens_fully_matched", s.screens_fully_matched},
          {"annotations", s.annotations},
          {"by_category", std::move(categories)},
          {"histogram", s.histogram},
          {"unmatched_by_type", std::move(by_type)}};
}

std::string HistogramCsv(const GapSummary& s) {
  std::ostringstream out;
  out << "bin,screens\n";
  for (int i = 0; i < 10; ++i) {
    out << i * 10 << "-" << i * 10 + 9 << "," << s.histogram[i] << "\n";
  }
  out << "100," << s.histogram[10] << "\n";
  return out.str();
}

std::string UnmatchedByTypeCsv(const GapSummary& s) {
  std::ostringstream out;
  out << "type,unmatched\n";
  for (const auto& [t, n] : s.unmatched_by_type) out << ToString(t) << "," << n << "\n";
  return out.str();
}

}  // namespace uisem
