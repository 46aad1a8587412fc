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

#ifndef UISEM_GROUPING_H_
#define UISEM_GROUPING_H_

#include <span>
#include <vector>

#include "uisem/config.h"
#include "uisem/model.h"

namespace uisem {

// Grouping operates on a flat list of top-level nodes. Each pass consumes
// leaves (or earlier groups) and emits the same list with some of them
// replaced by a group; nodes a pass does not touch keep their position.
// Boxes of new groups are the union of their members. Alternative text and
// clickability are filled later by FinalizeGroups, once children are ordered.

std::vector<AccessibilityNode> MakeLeaves(std::span<const DetectedElement> elements);

// Icon/Text leaves starting in the bottom tab zone and within the tolerance
// of the bottom-most node become tab candidates; x-overlapping candidates
// merge into one TabButton. A lone candidate still forms a TabButton.
std::vector<AccessibilityNode> GroupTabs(std::vector<AccessibilityNode> nodes,
                                         const HeuristicConfig& config);

// Links a Text leaf with a Text leaf below it when they overlap horizontally
// and the vertical gap is strictly less than the smaller height; connected
// components of two or more become TextBlocks.
std::vector<AccessibilityNode> GroupText(std::vector<AccessibilityNode> nodes,
                                         const HeuristicConfig& config);

// Attaches a subtitle (a Text leaf or a TextBlock, flattened) below a
// Picture leaf, plus one further Text line under it meeting the same
// conditions with respect to the subtitle. Each picture takes at most one
// subtitle; contested subtitles go to the nearest picture, then the upper,
// then the left one.
std::vector<AccessibilityNode> GroupPictureSubtitles(
    std::vector<AccessibilityNode> nodes, const HeuristicConfig& config);

// Every node (except TabButtons) whose box is contained by a Container
// detection joins the smallest such container. Containers nest; a container
// with no members stays a leaf.
std::vector<AccessibilityNode> GroupContainers(
    std::vector<AccessibilityNode> nodes, const HeuristicConfig& config);

// All four passes in precedence order: tabs, text, picture subtitles,
// containers.
std::vector<AccessibilityNode> GroupElements(
    std::span<const DetectedElement> elements, const HeuristicConfig& config);

// Recomputes group boxes, alt_text (children's spoken text joined in their
// current order) and clickability (any child clickable), bottom-up.
void FinalizeGroups(std::vector<AccessibilityNode>& nodes);

}  // namespace uisem

#endif  // UISEM_GROUPING_H_
