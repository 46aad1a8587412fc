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

#include "uisem/ordering.h"

#include <algorithm>
#include <unordered_map>

#include "uisem/errors.h"

namespace uisem {
namespace {

enum class Axis { kY, kX };

double Start(const BBox& b, Axis axis) {
  return axis == Axis::kY ? b.top() : b.left();
}
double End(const BBox& b, Axis axis) {
  return axis == Axis::kY ? b.bottom() : b.right();
}

// Splits `idx` at every whitespace band along `axis`.
std::vector<std::vector<size_t>> SplitAlong(std::span<const BBox> boxes,
                                            std::vector<size_t> idx, Axis axis,
                                            double epsilon) {
  std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    return Start(boxes[a], axis) < Start(boxes[b], axis);
  });
  std::vector<std::vector<size_t>> segments;
  double reach = 0.0;
  for (size_t i : idx) {
    if (segments.empty() || Start(boxes[i], axis) - reach > epsilon) {
      segments.emplace_back();
      reach = End(boxes[i], axis);
    } else {
      reach = std::max(reach, End(boxes[i], axis));
    }
    segments.back().push_back(i);
  }
  return segments;
}

// Top-to-bottom; runs of tops within epsilon of the run's first are
// left-to-right.
void SortUncuttable(std::span<const BBox> boxes, std::vector<size_t>& idx,
                    double epsilon) {
  std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    return boxes[a].top() < boxes[b].top();
  });
  for (size_t start = 0; start < idx.size();) {
    size_t end = start + 1;
    while (end < idx.size() &&
           boxes[idx[end]].top() - boxes[idx[start]].top() <= epsilon) {
      ++end;
    }
    std::stable_sort(idx.begin() + start, idx.begin() + end,
                     [&](size_t a, size_t b) {
                       return boxes[a].left() < boxes[b].left();
                     });
    start = end;
  }
}

void Cut(std::span<const BBox> boxes, std::vector<size_t> idx, double epsilon,
         std::vector<size_t>& out) {
  if (idx.size() <= 1) {
    out.insert(out.end(), idx.begin(), idx.end());
    return;
  }
  for (Axis axis : {Axis::kY, Axis::kX}) {
    auto segments = SplitAlong(boxes, idx, axis, epsilon);
    if (segments.size() > 1) {
      for (auto& segment : segments) Cut(boxes, std::move(segment), epsilon, out);
      return;
    }
  }
  SortUncuttable(boxes, idx, epsilon);
  out.insert(out.end(), idx.begin(), idx.end());
}

}  // namespace

std::vector<size_t> XyCutOrder(std::span<const BBox> boxes, double epsilon) {
  std::vector<size_t> idx(boxes.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::vector<size_t> out;
  out.reserve(boxes.size());
  Cut(boxes, std::move(idx), epsilon, out);
  return out;
}

void OrderNodes(std::vector<AccessibilityNode>& nodes, double epsilon) {
  for (auto& node : nodes) {
    if (node.is_group()) OrderNodes(node.children, epsilon);
  }
  std::vector<BBox> boxes;
  boxes.reserve(nodes.size());
  for (const auto& node : nodes) boxes.push_back(node.box);
  std::vector<AccessibilityNode> ordered;
  ordered.reserve(nodes.size());
  for (size_t i : XyCutOrder(boxes, epsilon)) ordered.push_back(std::move(nodes[i]));
  nodes = std::move(ordered);
}

size_t LongestIncreasingSubsequence(std::span<const size_t> values) {
  // tails[k] = smallest tail of an increasing run of length k + 1.
  std::vector<size_t> tails;
  for (size_t v : values) {
    auto it = std::lower_bound(tails.begin(), tails.end(), v);
    if (it == tails.end()) {
      tails.push_back(v);
    } else {
      *it = v;
    }
  }
  return tails.size();
}

int InsertionDistance(std::span<const std::string> produced,
                      std::span<const std::string> truth) {
  if (produced.size() != truth.size()) {
    throw SetMismatchError("orderings differ in length");
  }
  std::unordered_map<std::string_view, size_t> position;
  for (size_t i = 0; i < truth.size(); ++i) {
    if (!position.emplace(truth[i], i).second) {
      throw SetMismatchError("duplicate id '" + truth[i] + "' in truth order");
    }
  }
  std::vector<size_t> mapped;
  std::vector<bool> seen(truth.size(), false);
  for (const auto& id : produced) {
    auto it = position.find(id);
    if (it == position.end()) {
      throw SetMismatchError("id '" + id + "' missing from truth order");
    }
    if (seen[it->second]) {
      throw SetMismatchError("duplicate id '" + id + "' in produced order");
    }
    seen[it->second] = true;
    mapped.push_back(it->second);
  }
  return static_cast<int>(produced.size() - LongestIncreasingSubsequence(mapped));
}

}  // namespace uisem
