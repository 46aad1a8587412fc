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

#include "uisem/grouping.h"

#include <algorithm>
#include <limits>
#include <optional>
#include <tuple>

#include "union_find.h"

namespace uisem {
namespace {

bool IsLeafOfType(const AccessibilityNode& node, UIType type) {
  return node.kind == NodeKind::kElement && node.element->type == type;
}

BBox UnionBox(const std::vector<AccessibilityNode>& children,
              const std::optional<DetectedElement>& anchor) {
  BBox box = anchor ? anchor->box : children.front().box;
  for (const auto& child : children) box = box.Union(child.box);
  return box;
}

AccessibilityNode MakeGroup(NodeKind kind, std::vector<AccessibilityNode> children,
                            std::optional<DetectedElement> anchor = std::nullopt) {
  AccessibilityNode group{.kind = kind, .box = UnionBox(children, anchor)};
  group.element = std::move(anchor);
  group.children = std::move(children);
  return group;
}

// Replaces each member set in `groups` by the node built from it, placed at
// the position of the set's first member. Untouched nodes keep their order.
template <typename BuildFn>
std::vector<AccessibilityNode> Regroup(std::vector<AccessibilityNode> nodes,
                                       const std::vector<std::vector<size_t>>& groups,
                                       BuildFn build) {
  std::vector<long> group_of(nodes.size(), -1);
  for (size_t g = 0; g < groups.size(); ++g) {
    for (size_t i : groups[g]) group_of[i] = static_cast<long>(g);
  }
  std::vector<bool> emitted(groups.size(), false);
  std::vector<AccessibilityNode> out;
  out.reserve(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) {
    const long g = group_of[i];
    if (g < 0) {
      out.push_back(std::move(nodes[i]));
      continue;
    }
    if (emitted[g]) continue;
    emitted[g] = true;
    std::vector<AccessibilityNode> members;
    for (size_t m : groups[g]) members.push_back(std::move(nodes[m]));
    out.push_back(build(std::move(members)));
  }
  return out;
}

// Leaves of a flattened TextBlock, or the node itself.
std::vector<AccessibilityNode> Flatten(AccessibilityNode node) {
  if (node.kind == NodeKind::kTextBlock) return std::move(node.children);
  std::vector<AccessibilityNode> out;
  out.push_back(std::move(node));
  return out;
}

struct SubtitleCheck {
  const std::vector<AccessibilityNode>& nodes;
  const HeuristicConfig& config;

  // Vertical gap from `above` to `text` when `text` sits below `above`
  // within the allowed gap and mostly under it; nullopt otherwise.
  std::optional<double> Gap(const BBox& above, const BBox& text) const {
    if (text.center_y() <= above.bottom()) return std::nullopt;
    if (XOverlapFraction(text, above) < config.subtitle_x_overlap_min) {
      return std::nullopt;
    }
    const double gap = std::max(0.0, text.top() - above.bottom());
    if (!(gap < config.subtitle_y_gap)) return std::nullopt;
    return gap;
  }

  // True when no other node below `text` is strictly closer to it than
  // `above` (at distance `gap`); an equidistant node below loses to the one
  // above. Nodes that could themselves continue the subtitle under `text`
  // are not competitors.
  bool CloserThanBelow(size_t text, size_t above, double gap) const {
    const BBox& t = nodes[text].box;
    for (size_t d = 0; d < nodes.size(); ++d) {
      if (d == text || d == above) continue;
      const BBox& other = nodes[d].box;
      if (other.top() < t.center_y() || XOverlap(t, other) <= 0.0) continue;
      if (IsLeafOfType(nodes[d], UIType::kText) && Gap(t, other)) continue;
      if (other.top() - t.bottom() < gap) return false;
    }
    return true;
  }

  bool IsSubtitleCandidate(size_t i) const {
    return IsLeafOfType(nodes[i], UIType::kText) ||
           nodes[i].kind == NodeKind::kTextBlock;
  }
};

}  // namespace

std::vector<AccessibilityNode> MakeLeaves(std::span<const DetectedElement> elements) {
  std::vector<AccessibilityNode> out;
  out.reserve(elements.size());
  for (const auto& e : elements) out.push_back(AccessibilityNode::Leaf(e));
  return out;
}

std::vector<AccessibilityNode> GroupTabs(std::vector<AccessibilityNode> nodes,
                                         const HeuristicConfig& config) {
  if (nodes.empty()) return nodes;
  double lowest = -std::numeric_limits<double>::infinity();
  for (const auto& n : nodes) lowest = std::max(lowest, n.box.bottom());

  std::vector<size_t> candidates;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (!IsLeafOfType(nodes[i], UIType::kIcon) &&
        !IsLeafOfType(nodes[i], UIType::kText)) {
      continue;
    }
    const BBox& d = nodes[i].box;
    if (d.top() >= 1.0 - config.tab_zone_fraction &&
        lowest - d.top() <= config.tab_height_tolerance) {
      candidates.push_back(i);
    }
  }
  internal::UnionFind tabs(candidates.size());
  for (size_t a = 0; a < candidates.size(); ++a) {
    for (size_t b = a + 1; b < candidates.size(); ++b) {
      if (XOverlap(nodes[candidates[a]].box, nodes[candidates[b]].box) > 0.0) {
        tabs.Unite(a, b);
      }
    }
  }
  auto groups = tabs.Components();
  for (auto& g : groups) {
    for (size_t& k : g) k = candidates[k];
  }
  return Regroup(std::move(nodes), groups, [](std::vector<AccessibilityNode> m) {
    return MakeGroup(NodeKind::kTabButton, std::move(m));
  });
}

std::vector<AccessibilityNode> GroupText(std::vector<AccessibilityNode> nodes,
                                         const HeuristicConfig& /*config*/) {
  std::vector<size_t> texts;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (IsLeafOfType(nodes[i], UIType::kText)) texts.push_back(i);
  }
  internal::UnionFind blocks(texts.size());
  for (size_t a = 0; a < texts.size(); ++a) {
    for (size_t b = a + 1; b < texts.size(); ++b) {
      const BBox* upper = &nodes[texts[a]].box;
      const BBox* lower = &nodes[texts[b]].box;
      if (lower->center_y() < upper->center_y()) std::swap(upper, lower);
      if (XOverlap(*upper, *lower) <= 0.0) continue;
      const double gap = lower->top() - upper->bottom();
      if (gap < std::min(upper->height(), lower->height())) blocks.Unite(a, b);
    }
  }
  std::vector<std::vector<size_t>> groups;
  for (auto& component : blocks.Components()) {
    if (component.size() < 2) continue;
    for (size_t& k : component) k = texts[k];
    groups.push_back(std::move(component));
  }
  return Regroup(std::move(nodes), groups, [](std::vector<AccessibilityNode> m) {
    return MakeGroup(NodeKind::kTextBlock, std::move(m));
  });
}

std::vector<AccessibilityNode> GroupPictureSubtitles(
    std::vector<AccessibilityNode> nodes, const HeuristicConfig& config) {
  const SubtitleCheck check{nodes, config};

  // Best picture per subtitle candidate: smallest gap, then upper, then left.
  using Rank = std::tuple<double, double, double>;
  std::vector<std::optional<size_t>> picture_for(nodes.size());
  std::vector<Rank> rank_for(nodes.size());
  for (size_t t = 0; t < nodes.size(); ++t) {
    if (!check.IsSubtitleCandidate(t)) continue;
    for (size_t p = 0; p < nodes.size(); ++p) {
      if (!IsLeafOfType(nodes[p], UIType::kPicture)) continue;
      auto gap = check.Gap(nodes[p].box, nodes[t].box);
      if (!gap || !check.CloserThanBelow(t, p, *gap)) continue;
      const Rank rank{*gap, nodes[p].box.top(), nodes[p].box.left()};
      if (!picture_for[t] || rank < rank_for[t]) {
        picture_for[t] = p;
        rank_for[t] = rank;
      }
    }
  }
  // One subtitle per picture: the best-ranked claimant, then the upper one.
  std::vector<std::optional<size_t>> subtitle_of(nodes.size());
  for (size_t t = 0; t < nodes.size(); ++t) {
    if (!picture_for[t]) continue;
    auto& current = subtitle_of[*picture_for[t]];
    if (!current ||
        std::make_pair(rank_for[t], nodes[t].box.left()) <
            std::make_pair(rank_for[*current], nodes[*current].box.left())) {
      current = t;
    }
  }

  std::vector<bool> used(nodes.size(), false);
  std::vector<std::vector<size_t>> groups;
  for (size_t p = 0; p < nodes.size(); ++p) {
    if (!subtitle_of[p]) continue;
    const size_t t1 = *subtitle_of[p];
    used[p] = used[t1] = true;
    groups.push_back({p, t1});
  }
  // A second line under each first subtitle.
  for (auto& group : groups) {
    const size_t t1 = group[1];
    std::optional<size_t> best;
    double best_gap = 0.0;
    for (size_t t2 = 0; t2 < nodes.size(); ++t2) {
      if (used[t2] || !IsLeafOfType(nodes[t2], UIType::kText)) continue;
      auto gap = check.Gap(nodes[t1].box, nodes[t2].box);
      if (!gap || !check.CloserThanBelow(t2, t1, *gap)) continue;
      if (!best || *gap < best_gap) {
        best = t2;
        best_gap = *gap;
      }
    }
    if (best) {
      used[*best] = true;
      group.push_back(*best);
    }
    std::sort(group.begin(), group.end());
  }
  return Regroup(std::move(nodes), groups, [](std::vector<AccessibilityNode> m) {
    std::vector<AccessibilityNode> leaves;
    for (auto& node : m) {
      for (auto& leaf : Flatten(std::move(node))) leaves.push_back(std::move(leaf));
    }
    return MakeGroup(NodeKind::kPictureWithSubtitle, std::move(leaves));
  });
}

std::vector<AccessibilityNode> GroupContainers(
    std::vector<AccessibilityNode> nodes, const HeuristicConfig& config) {
  const size_t n = nodes.size();
  std::vector<size_t> containers;
  for (size_t i = 0; i < n; ++i) {
    if (IsLeafOfType(nodes[i], UIType::kContainer)) containers.push_back(i);
  }
  if (containers.empty()) return nodes;

  // Strict (area, index) order keeps the containment forest acyclic when
  // two containers coincide.
  auto larger = [&](size_t a, size_t b) {
    const double aa = nodes[a].box.area();
    const double ab = nodes[b].box.area();
    return aa > ab || (aa == ab && a > b);
  };
  std::vector<std::optional<size_t>> parent(n);
  for (size_t i = 0; i < n; ++i) {
    if (nodes[i].kind == NodeKind::kTabButton) continue;
    const bool is_container = IsLeafOfType(nodes[i], UIType::kContainer);
    for (size_t c : containers) {
      if (c == i) continue;
      if (is_container && !larger(c, i)) continue;
      if (ContainmentFraction(nodes[i].box, nodes[c].box) <
          config.container_membership) {
        continue;
      }
      if (!parent[i] || larger(*parent[i], c)) parent[i] = c;
    }
  }

  std::vector<std::vector<size_t>> members(n);
  for (size_t i = 0; i < n; ++i) {
    if (parent[i]) members[*parent[i]].push_back(i);
  }
  // Builds container `c` after its nested containers.
  std::vector<std::optional<AccessibilityNode>> slots(n);
  for (size_t i = 0; i < n; ++i) slots[i] = std::move(nodes[i]);
  auto build = [&](auto&& self, size_t c) -> AccessibilityNode {
    AccessibilityNode leaf = std::move(*slots[c]);
    if (members[c].empty()) return leaf;
    std::vector<AccessibilityNode> children;
    for (size_t m : members[c]) {
      children.push_back(IsLeafOfType(*slots[m], UIType::kContainer)
                             ? self(self, m)
                             : std::move(*slots[m]));
    }
    return MakeGroup(NodeKind::kContainer, std::move(children),
                     std::move(leaf.element));
  };
  std::vector<AccessibilityNode> out;
  for (size_t i = 0; i < n; ++i) {
    if (parent[i]) continue;
    out.push_back(IsLeafOfType(*slots[i], UIType::kContainer)
                      ? build(build, i)
                      : std::move(*slots[i]));
  }
  return out;
}

std::vector<AccessibilityNode> GroupElements(
    std::span<const DetectedElement> elements, const HeuristicConfig& config) {
  auto nodes = MakeLeaves(elements);
  nodes = GroupTabs(std::move(nodes), config);
  nodes = GroupText(std::move(nodes), config);
  nodes = GroupPictureSubtitles(std::move(nodes), config);
  nodes = GroupContainers(std::move(nodes), config);
  return nodes;
}

void FinalizeGroups(std::vector<AccessibilityNode>& nodes) {
  for (auto& node : nodes) {
    if (!node.is_group()) continue;
    FinalizeGroups(node.children);
    node.box = UnionBox(node.children, node.element);
    node.alt_text = JoinAltText(node.children);
    bool any = false;
    for (const auto& child : node.children) any |= child.clickable == true;
    node.clickable = any;
  }
}

}  // namespace uisem
