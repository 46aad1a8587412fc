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

#include "uisem/tree.h"

#include <vector>

#include "uisem/grouping.h"
#include "uisem/ordering.h"
#include "uisem/selection.h"

namespace uisem {
namespace {

int CountGroups(const std::vector<AccessibilityNode>& nodes) {
  int n = 0;
  for (const auto& node : nodes) {
    if (node.is_group()) n += 1 + CountGroups(node.children);
  }
  return n;
}

}  // namespace

AccessibilityTree BuildTree(const std::string& screen_id,
                            std::span<const DetectedElement> elements,
                            const Raster* raster, const HeuristicConfig& config) {
  AccessibilityTree tree{.screen_id = screen_id};
  tree.nodes = GroupElements(elements, config);
  OrderNodes(tree.nodes, config.order_epsilon);

  std::vector<AccessibilityNode*> tabs;
  std::vector<BBox> tab_boxes;
  for (auto& node : tree.nodes) {
    if (node.kind == NodeKind::kTabButton) {
      tabs.push_back(&node);
      tab_boxes.push_back(node.box);
    }
  }
  const SelectionResult selection =
      SelectTabState(tab_boxes, raster, config.tint_quantization_bits);
  for (size_t i = 0; i < tabs.size(); ++i) tabs[i]->selected = selection.flags[i];

  FinalizeGroups(tree.nodes);
  return tree;
}

int CountGroups(const AccessibilityTree& tree) { return CountGroups(tree.nodes); }

}  // namespace uisem
