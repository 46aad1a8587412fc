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

#ifndef UISEM_MODEL_H_
#define UISEM_MODEL_H_

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uisem/geometry.h"
#include "uisem/raster.h"

namespace uisem {

// The 13 detector classes, followed by classes that only appear in pipeline
// output or annotation data.
enum class UIType {
  kCheckboxSelected,
  kCheckboxUnselected,
  kContainer,
  kDialog,
  kIcon,
  kPageControl,
  kPicture,
  kSegmentedControl,
  kSlider,
  kText,
  kTextField,
  kToggleSelected,
  kToggleUnselected,
  kTabButton,
  kOther,
};

inline constexpr int kNumDetectorClasses = 13;
inline constexpr int kNumUITypes = 15;

// Detector classes in declaration order.
const std::array<UIType, kNumDetectorClasses>& DetectorClasses();

std::string_view ToString(UIType type);
std::optional<UIType> ParseUIType(std::string_view name);

bool IsDetectorClass(UIType type);
// Types for which a `selected` flag is meaningful.
bool HasSelectionSemantics(UIType type);

inline constexpr std::string_view kUnknownIcon = "unknown";

struct DetectedElement {
  std::string id;
  BBox box;
  UIType type = UIType::kOther;
  double confidence = 1.0;
  std::optional<std::string> text;        // OCR output
  std::optional<std::string> icon_class;  // icon recognition output
  std::optional<bool> selected;
  std::optional<bool> clickable;
  // Annotation data only.
  std::optional<bool> clickable_annotated;

  bool operator==(const DetectedElement&) const = default;
};

// One recognized text line from an external OCR engine.
struct OcrText {
  BBox box;
  std::string text;

  bool operator==(const OcrText&) const = default;
};

struct Screen {
  std::string screen_id;
  int width_px = 0;
  int height_px = 0;
  std::vector<DetectedElement> elements;
  // Path of the screenshot relative to the raster directory, if any.
  std::optional<std::string> raster_path;
  // Decoded pixels; loaded on demand and not part of serialization.
  std::shared_ptr<const Raster> raster;

  // Compares serialized content only (raster pixels excluded).
  bool operator==(const Screen& other) const;
};

// Group kinds of the accessibility tree; kElement is a leaf.
enum class NodeKind {
  kElement,
  kTabButton,
  kContainer,
  kTextBlock,
  kPictureWithSubtitle,
};

std::string_view ToString(NodeKind kind);
std::optional<NodeKind> ParseNodeKind(std::string_view name);

struct AccessibilityNode {
  NodeKind kind = NodeKind::kElement;
  BBox box;
  // The leaf's element, or for a Container group the container detection.
  std::optional<DetectedElement> element;
  std::vector<AccessibilityNode> children;
  std::string alt_text;
  std::optional<bool> clickable;
  std::optional<bool> selected;

  bool is_group() const { return kind != NodeKind::kElement; }
  bool operator==(const AccessibilityNode&) const = default;

  static AccessibilityNode Leaf(DetectedElement element);
};

struct AccessibilityTree {
  std::string screen_id;
  std::vector<AccessibilityNode> nodes;

  bool operator==(const AccessibilityTree&) const = default;
};

// Element ids under `node` in navigation order; a Container's own detection
// precedes its children.
std::vector<std::string> ElementIds(const AccessibilityNode& node);
std::vector<std::string> ElementIds(const AccessibilityTree& tree);

// Text a node contributes to its parent's alternative text: a leaf's text,
// else its recognized icon class, else the group's alt_text.
std::string SpokenText(const AccessibilityNode& node);

// Joins SpokenText of the children with ", ", skipping empty ones.
std::string JoinAltText(const std::vector<AccessibilityNode>& children);

}  // namespace uisem

#endif  // UISEM_MODEL_H_
