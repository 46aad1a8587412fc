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

#include "uisem/model.h"

namespace uisem {
namespace {

constexpr std::array<std::string_view, kNumUITypes> kTypeNames = {
    "CheckboxSelected", "CheckboxUnselected", "Container",  "Dialog",
    "Icon",             "PageControl",        "Picture",    "SegmentedControl",
    "Slider",           "Text",               "TextField",  "ToggleSelected",
    "ToggleUnselected", "TabButton",          "Other",
};

constexpr std::array<std::string_view, 5> kNodeKindNames = {
    "Element", "TabButton", "Container", "TextBlock", "PictureWithSubtitle",
};

void CollectIds(const AccessibilityNode& node, std::vector<std::string>& out) {
  if (node.element) out.push_back(node.element->id);
  for (const auto& child : node.children) CollectIds(child, out);
}

}  // namespace

const std::array<UIType, kNumDetectorClasses>& DetectorClasses() {
  static const std::array<UIType, kNumDetectorClasses> kClasses = [] {
    std::array<UIType, kNumDetectorClasses> out{};
    for (int i = 0; i < kNumDetectorClasses; ++i) out[i] = static_cast<UIType>(i);
    return out;
  }();
  return kClasses;
}

std::string_view ToString(UIType type) {
  return kTypeNames[static_cast<size_t>(type)];
}

std::optional<UIType> ParseUIType(std::string_view name) {
  for (size_t i = 0; i < kTypeNames.size(); ++i) {
    if (kTypeNames[i] == name) return static_cast<UIType>(i);
  }
  return std::nullopt;
}

bool IsDetectorClass(UIType type) {
  return static_cast<int>(type) < kNumDetectorClasses;
}

bool HasSelectionSemantics(UIType type) {
  switch (type) {
    case UIType::kCheckboxSelected:
    case UIType::kCheckboxUnselected:
    case UIType::kToggleSelected:
    case UIType::kToggleUnselected:
    case UIType::kSegmentedControl:
    case UIType::kTabButton:
      return true;
    default:
      return false;
  }
}

bool Screen::operator==(const Screen& other) const {
  return screen_id == other.screen_id && width_px == other.width_px &&
         height_px == other.height_px && elements == other.elements &&
         raster_path == other.raster_path;
}

std::string_view ToString(NodeKind kind) {
  return kNodeKindNames[static_cast<size_t>(kind)];
}

std::optional<NodeKind> ParseNodeKind(std::string_view name) {
  for (size_t i = 0; i < kNodeKindNames.size(); ++i) {
    if (kNodeKindNames[i] == name) return static_cast<NodeKind>(i);
  }
  return std::nullopt;
}

AccessibilityNode AccessibilityNode::Leaf(DetectedElement element) {
  AccessibilityNode node{.kind = NodeKind::kElement, .box = element.box};
  node.clickable = element.clickable;
  node.selected = element.selected;
  node.element = std::move(element);
  return node;
}

std::vector<std::string> ElementIds(const AccessibilityNode& node) {
  std::vector<std::string> out;
  CollectIds(node, out);
  return out;
}

std::vector<std::string> ElementIds(const AccessibilityTree& tree) {
  std::vector<std::string> out;
  for (const auto& node : tree.nodes) CollectIds(node, out);
  return out;
}

std::string SpokenText(const AccessibilityNode& node) {
  if (node.is_group()) return node.alt_text;
  const DetectedElement& e = *node.element;
  if (e.text && !e.text->empty()) return *e.text;
  if (e.icon_class && *e.icon_class != kUnknownIcon) return *e.icon_class;
  return {};
}

std::string JoinAltText(const std::vector<AccessibilityNode>& children) {
  std::string out;
  for (const auto& child : children) {
    std::string piece = SpokenText(child);
    if (piece.empty()) continue;
    if (!out.empty()) out += ", ";
    out += piece;
  }
  return out;
}

}  // namespace uisem
