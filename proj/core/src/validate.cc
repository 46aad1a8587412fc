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

#include "uisem/validate.h"

#include <cmath>
#include <set>
#include <sstream>

namespace uisem {
namespace {

Issue Warn(std::string code, std::string id, std::string message) {
  return {Issue::Severity::kWarning, std::move(code), std::move(id),
          std::move(message)};
}

Issue Fail(std::string code, std::string id, std::string message) {
  return {Issue::Severity::kError, std::move(code), std::move(id),
          std::move(message)};
}

std::string UniqueId(const std::string& id, std::set<std::string>& taken) {
  if (taken.insert(id).second) return id;
  for (int suffix = 2;; ++suffix) {
    std::string candidate = id + "#" + std::to_string(suffix);
    if (taken.insert(candidate).second) return candidate;
  }
}

}  // namespace

std::vector<Issue> ValidationResult::errors() const {
  std::vector<Issue> out;
  for (const auto& i : issues) {
    if (i.severity == Issue::Severity::kError) out.push_back(i);
  }
  return out;
}

std::vector<Issue> ValidationResult::warnings() const {
  std::vector<Issue> out;
  for (const auto& i : issues) {
    if (i.severity == Issue::Severity::kWarning) out.push_back(i);
  }
  return out;
}

ValidationResult ValidateScreen(const ScreenRecord& record,
                                const ValidationOptions& options) {
  ValidationResult result;
  auto& issues = result.issues;

  if (record.width_px <= 0 || record.height_px <= 0) {
    issues.push_back(Fail("non_positive_dimensions", "",
                          "screen dimensions must be positive"));
  }
  if (record.elements.empty()) {
    issues.push_back(Warn("empty_screen", "", "screen has no elements"));
  }

  Screen screen;
  screen.screen_id = record.screen_id;
  screen.width_px = static_cast<int>(record.width_px);
  screen.height_px = static_cast<int>(record.height_px);
  screen.raster_path = record.raster_path;

  std::set<std::string> taken;
  for (const ElementRecord& e : record.elements) {
    const std::string& id = e.id;
    bool element_ok = true;
    auto type = ParseUIType(e.type);
    if (!type) {
      issues.push_back(Fail("unknown_type", id, "unknown UI type '" + e.type + "'"));
      element_ok = false;
    } else if (!IsDetectorClass(*type) && !options.allow_derived_types) {
      issues.push_back(Fail("non_detector_type", id,
                            "type " + e.type + " is not a detector class"));
      element_ok = false;
    }
    if (!std::isfinite(e.confidence) || e.confidence < 0.0 ||
        e.confidence > 1.0) {
      issues.push_back(
          Fail("confidence_out_of_range", id, "confidence outside [0, 1]"));
      element_ok = false;
    }
    auto raw = BBox::TryMake(e.l, e.t, e.r, e.b);
    std::optional<BBox> box;
    if (!raw) {
      std::ostringstream msg;
      msg << "degenerate box (" << e.l << ", " << e.t << ", " << e.r << ", "
          << e.b << ")";
      issues.push_back(Fail("degenerate_box", id, msg.str()));
      element_ok = false;
    } else {
      box = raw->ClampedToUnit();
      if (!box) {
        issues.push_back(
            Fail("box_outside_screen", id, "box lies entirely off screen"));
        element_ok = false;
      } else if (!(*box == *raw)) {
        issues.push_back(Warn("box_clamped", id,
                              "box " + raw->ToString() + " clamped to " +
                                  box->ToString()));
      }
    }
    if (type && e.selected && !HasSelectionSemantics(*type)) {
      issues.push_back(Fail("selected_on_stateless_type", id,
                            "selected is set on a " + e.type));
      element_ok = false;
    }
    if (type && e.icon_class && *type != UIType::kIcon) {
      issues.push_back(Fail("icon_class_on_non_icon", id,
                            "icon_class is set on a " + e.type));
      element_ok = false;
    }
    if (!element_ok) continue;

    std::string unique = UniqueId(id, taken);
    if (unique != id) {
      issues.push_back(Warn("duplicate_id", id, "id renamed to " + unique));
    }
    screen.elements.push_back(DetectedElement{
        .id = std::move(unique),
        .box = *box,
        .type = *type,
        .confidence = e.confidence,
        .text = e.text,
        .icon_class = e.icon_class,
        .selected = e.selected,
        .clickable = e.clickable,
        .clickable_annotated = e.clickable_annotated,
    });
  }

  bool has_error = false;
  for (const auto& i : issues) {
    has_error |= i.severity == Issue::Severity::kError;
  }
  if (!has_error) result.screen = std::move(screen);
  return result;
}

ScreenRecord ToRecord(const Screen& screen) {
  ScreenRecord record{
      .screen_id = screen.screen_id,
      .width_px = screen.width_px,
      .height_px = screen.height_px,
      .raster_path = screen.raster_path,
  };
  for (const auto& e : screen.elements) {
    record.elements.push_back(ElementRecord{
        .id = e.id,
        .l = e.box.left(),
        .t = e.box.top(),
        .r = e.box.right(),
        .b = e.box.bottom(),
        .type = std::string(ToString(e.type)),
        .confidence = e.confidence,
        .text = e.text,
        .icon_class = e.icon_class,
        .selected = e.selected,
        .clickable = e.clickable,
        .clickable_annotated = e.clickable_annotated,
    });
  }
  return record;
}

}  // namespace uisem
