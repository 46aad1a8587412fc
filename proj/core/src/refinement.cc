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

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>

#include "uisem/geometry.h"

namespace uisem {
namespace {

// Indices sorted by confidence descending, stable on ties.
std::vector<size_t> ByConfidence(std::span<const DetectedElement> elements) {
  std::vector<size_t> order(elements.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return elements[a].confidence > elements[b].confidence;
  });
  return order;
}

std::vector<DetectedElement> Select(std::span<const DetectedElement> elements,
                                    const std::vector<bool>& keep) {
  std::vector<DetectedElement> out;
  for (size_t i = 0; i < elements.size(); ++i) {
    if (keep[i]) out.push_back(elements[i]);
  }
  return out;
}

std::optional<size_t> DedupGroupOf(UIType type, const HeuristicConfig& config) {
  for (size_t g = 0; g < config.dedup_groups.size(); ++g) {
    const auto& group = config.dedup_groups[g];
    if (std::find(group.begin(), group.end(), type) != group.end()) return g;
  }
  return std::nullopt;
}

std::string FreshId(const std::string& base, std::set<std::string>& taken) {
  for (int k = 0;; ++k) {
    std::string id = base + "-" + std::to_string(k);
    if (taken.insert(id).second) return id;
  }
}

StageCounts Count(std::string stage, size_t in, size_t out, int retyped = 0) {
  StageCounts c{.stage = std::move(stage),
                .elements_in = static_cast<int>(in),
                .elements_out = static_cast<int>(out),
                .retyped = retyped};
  if (out >= in) {
    c.added = c.elements_out - c.elements_in;
  } else {
    c.removed = c.elements_in - c.elements_out;
  }
  return c;
}

}  // namespace

std::vector<DetectedElement> FilterByConfidence(
    std::span<const DetectedElement> elements, const HeuristicConfig& config,
    std::vector<std::string>* warnings) {
  std::vector<DetectedElement> out;
  std::set<UIType> missing;
  for (const auto& e : elements) {
    auto it = config.per_class_conf_threshold.find(e.type);
    if (it == config.per_class_conf_threshold.end()) {
      missing.insert(e.type);
      out.push_back(e);
    } else if (e.confidence >= it->second) {
      out.push_back(e);
    }
  }
  if (warnings != nullptr) {
    for (UIType t : missing) {
      warnings->push_back("no confidence threshold for " +
                          std::string(ToString(t)) + "; keeping all");
    }
  }
  return out;
}

std::vector<DetectedElement> NmsWithinClass(
    std::span<const DetectedElement> elements, double iou_threshold) {
  std::vector<bool> keep(elements.size(), false);
  std::vector<size_t> kept;
  for (size_t i : ByConfidence(elements)) {
    bool suppressed = false;
    for (size_t k : kept) {
      if (elements[k].type == elements[i].type &&
          Iou(elements[k].box, elements[i].box) >= iou_threshold) {
        suppressed = true;
        break;
      }
    }
    if (!suppressed) {
      keep[i] = true;
      kept.push_back(i);
    }
  }
  return Select(elements, keep);
}

std::vector<DetectedElement> DedupCrossClass(
    std::span<const DetectedElement> elements, const HeuristicConfig& config) {
  std::vector<bool> keep(elements.size(), true);
  std::vector<std::optional<size_t>> group(elements.size());
  for (size_t i = 0; i < elements.size(); ++i) {
    group[i] = DedupGroupOf(elements[i].type, config);
  }
  std::vector<size_t> kept;
  for (size_t i : ByConfidence(elements)) {
    if (!group[i]) continue;
    for (size_t k : kept) {
      if (group[k] == group[i] &&
          Iou(elements[k].box, elements[i].box) > config.dedup_iou) {
        keep[i] = false;
        break;
      }
    }
    if (keep[i]) kept.push_back(i);
  }
  return Select(elements, keep);
}

std::vector<DetectedElement> RepairSegmentedControls(
    std::span<const DetectedElement> elements, const HeuristicConfig& config) {
  std::vector<DetectedElement> out(elements.begin(), elements.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < out.size(); ++i) {
      if (out[i].type != UIType::kText) continue;
      const BBox& text = out[i].box;
      bool on_row = false;
      bool contained = false;
      for (size_t j = 0; j < out.size(); ++j) {
        if (j == i || out[j].type != UIType::kSegmentedControl) continue;
        const BBox& sc = out[j].box;
        on_row |= YOverlap(text, sc) >= config.sc_row_y_overlap_min * text.height();
        contained |= ContainmentFraction(text, sc) >= config.containment_match;
      }
      if (on_row && !contained) {
        out[i].type = UIType::kSegmentedControl;
        changed = true;
      }
    }
  }
  return out;
}

std::vector<DetectedElement> MergeOcr(std::span<const DetectedElement> elements,
                                      std::span<const OcrText> ocr) {
  std::vector<DetectedElement> out(elements.begin(), elements.end());
  std::set<std::string> taken;
  for (const auto& e : out) taken.insert(e.id);
  for (const OcrText& line : ocr) {
    bool overlaps_any = false;
    bool already_merged = false;
    std::optional<size_t> best;
    double best_iou = 0.0;
    for (size_t i = 0; i < out.size(); ++i) {
      if (IntersectionArea(line.box, out[i].box) <= 0.0) continue;
      overlaps_any = true;
      // An overlapping Text element already carrying this string means the
      // line was merged before; merging again must not move it.
      already_merged |= out[i].type == UIType::kText && out[i].text == line.text;
      if (out[i].type != UIType::kText || out[i].text) continue;
      const double iou = Iou(line.box, out[i].box);
      if (!best || iou > best_iou) {
        best = i;
        best_iou = iou;
      }
    }
    if (already_merged) continue;
    if (!overlaps_any) {
      out.push_back(DetectedElement{.id = FreshId("ocr", taken),
                                    .box = line.box,
                                    .type = UIType::kText,
                                    .confidence = 1.0,
                                    .text = line.text});
    } else if (best) {
      out[*best].text = line.text;
    }
  }
  return out;
}

RefinementResult Refine(std::span<const DetectedElement> elements,
                        std::span<const OcrText> ocr,
                        const HeuristicConfig& config) {
  RefinementResult r;
  auto filtered = FilterByConfidence(elements, config, &r.warnings);
  r.stages.push_back(Count("confidence_filter", elements.size(), filtered.size()));

  auto nms = NmsWithinClass(filtered, config.nms_iou);
  r.stages.push_back(Count("nms_within_class", filtered.size(), nms.size()));

  auto dedup = DedupCrossClass(nms, config);
  r.stages.push_back(Count("dedup_cross_class", nms.size(), dedup.size()));

  auto repaired = RepairSegmentedControls(dedup, config);
  int retyped = 0;
  for (size_t i = 0; i < repaired.size(); ++i) {
    retyped += repaired[i].type != dedup[i].type;
  }
  r.stages.push_back(Count("repair_segmented_controls", dedup.size(),
                           repaired.size(), retyped));

  r.elements = MergeOcr(repaired, ocr);
  r.stages.push_back(Count("merge_ocr", repaired.size(), r.elements.size()));
  return r;
}

}  // namespace uisem
