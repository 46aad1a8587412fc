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

#include "uisem/config.h"

#include <cmath>
#include <set>
#include <sstream>

#include "uisem/errors.h"

namespace uisem {
namespace {

using nlohmann::json;

bool InUnit(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

double ReadRatio(const json& value, const std::string& key) {
  if (!value.is_number()) {
    throw SchemaError("config field '" + key + "' must be a number");
  }
  return value.get<double>();
}

UIType ReadType(const std::string& name, const std::string& context) {
  auto type = ParseUIType(name);
  if (!type) throw SchemaError(context + ": unknown UI type '" + name + "'");
  return *type;
}

}  // namespace

std::map<UIType, double> HeuristicConfig::DefaultThresholds() {
  std::map<UIType, double> out;
  for (UIType t : DetectorClasses()) out[t] = 0.5;
  return out;
}

std::vector<std::string> HeuristicConfig::Validate() const {
  std::vector<std::string> problems;
  auto check = [&](double v, const char* name) {
    if (!InUnit(v)) {
      std::ostringstream msg;
      msg << name << " = " << v << " is outside [0, 1]";
      problems.push_back(msg.str());
    }
  };
  for (const auto& [type, threshold] : per_class_conf_threshold) {
    if (!InUnit(threshold)) {
      problems.push_back("per_class_conf_threshold[" +
                         std::string(ToString(type)) + "] is outside [0, 1]");
    }
  }
  check(nms_iou, "nms_iou");
  check(dedup_iou, "dedup_iou");
  check(tab_zone_fraction, "tab_zone_fraction");
  check(tab_height_tolerance, "tab_height_tolerance");
  check(subtitle_y_gap, "subtitle_y_gap");
  check(subtitle_x_overlap_min, "subtitle_x_overlap_min");
  check(containment_match, "containment_match");
  check(overlap_match_iou, "overlap_match_iou");
  check(fullscreen_area, "fullscreen_area");
  check(clickability_target_precision, "clickability_target_precision");
  check(sc_row_y_overlap_min, "sc_row_y_overlap_min");
  check(container_membership, "container_membership");
  check(order_epsilon, "order_epsilon");
  check(match_iou, "match_iou");
  if (nms_iou <= 0.0) problems.push_back("nms_iou must be positive");
  if (!(dedup_iou > overlap_match_iou)) {
    problems.push_back("dedup_iou must exceed overlap_match_iou");
  }
  if (tint_quantization_bits < 1 || tint_quantization_bits > 8) {
    problems.push_back("tint_quantization_bits must be in [1, 8]");
  }
  std::set<UIType> seen;
  for (const auto& group : dedup_groups) {
    for (UIType t : group) {
      if (!seen.insert(t).second) {
        problems.push_back("UI type " + std::string(ToString(t)) +
                           " appears in more than one dedup group");
      }
    }
  }
  return problems;
}

json ToJson(const HeuristicConfig& c) {
  json thresholds = json::object();
  for (const auto& [type, v] : c.per_class_conf_threshold) {
    thresholds[std::string(ToString(type))] = v;
  }
  json groups = json::array();
  for (const auto& group : c.dedup_groups) {
    json names = json::array();
    for (UIType t : group) names.push_back(std::string(ToString(t)));
    groups.push_back(std::move(names));
  }
  return json{
      {"per_class_conf_threshold", std::move(thresholds)},
      {"nms_iou", c.nms_iou},
      {"dedup_iou", c.dedup_iou},
      {"dedup_groups", std::move(groups)},
      {"tab_zone_fraction", c.tab_zone_fraction},
      {"tab_height_tolerance", c.tab_height_tolerance},
      {"subtitle_y_gap", c.subtitle_y_gap},
      {"subtitle_x_overlap_min", c.subtitle_x_overlap_min},
      {"containment_match", c.containment_match},
      {"overlap_match_iou", c.overlap_match_iou},
      {"fullscreen_area", c.fullscreen_area},
      {"clickability_target_precision", c.clickability_target_precision},
      {"sc_row_y_overlap_min", c.sc_row_y_overlap_min},
      {"container_membership", c.container_membership},
      {"tint_quantization_bits", c.tint_quantization_bits},
      {"order_epsilon", c.order_epsilon},
      {"match_iou", c.match_iou},
  };
}

HeuristicConfig ApplyConfigOverlay(const HeuristicConfig& base,
                                   const json& overlay) {
  if (!overlay.is_object()) throw SchemaError("config must be a JSON object");
  HeuristicConfig c = base;
  const std::map<std::string, double*> ratios = {
      {"nms_iou", &c.nms_iou},
      {"dedup_iou", &c.dedup_iou},
      {"tab_zone_fraction", &c.tab_zone_fraction},
      {"tab_height_tolerance", &c.tab_height_tolerance},
      {"subtitle_y_gap", &c.subtitle_y_gap},
      {"subtitle_x_overlap_min", &c.subtitle_x_overlap_min},
      {"containment_match", &c.containment_match},
      {"overlap_match_iou", &c.overlap_match_iou},
      {"fullscreen_area", &c.fullscreen_area},
      {"clickability_target_precision", &c.clickability_target_precision},
      {"sc_row_y_overlap_min", &c.sc_row_y_overlap_min},
      {"container_membership", &c.container_membership},
      {"order_epsilon", &c.order_epsilon},
      {"match_iou", &c.match_iou},
  };
  for (const auto& [key, value] : overlay.items()) {
    if (auto it = ratios.find(key); it != ratios.end()) {
      *it->second = ReadRatio(value, key);
    } else if (key == "per_class_conf_threshold") {
      if (!value.is_object()) {
        throw SchemaError("per_class_conf_threshold must be an object");
      }
      // Overlay semantics: listed classes replace, others keep base values.
      for (const auto& [name, v] : value.items()) {
        c.per_class_conf_threshold[ReadType(name, key)] =
            ReadRatio(v, key + "." + name);
      }
    } else if (key == "dedup_groups") {
      if (!value.is_array()) throw SchemaError("dedup_groups must be an array");
      c.dedup_groups.clear();
      for (const auto& group : value) {
        if (!group.is_array()) {
          throw SchemaError("dedup_groups entries must be arrays");
        }
        std::vector<UIType> types;
        for (const auto& name : group) {
          if (!name.is_string()) {
            throw SchemaError("dedup_groups entries must be type names");
          }
          types.push_back(ReadType(name.get<std::string>(), key));
        }
        c.dedup_groups.push_back(std::move(types));
      }
    } else if (key == "tint_quantization_bits") {
      if (!value.is_number_integer()) {
        throw SchemaError("tint_quantization_bits must be an integer");
      }
      c.tint_quantization_bits = value.get<int>();
    } else {
      throw SchemaError("unknown config field '" + key + "'");
    }
  }
  return c;
}

}  // namespace uisem
