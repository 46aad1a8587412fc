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

#ifndef UISEM_ORDERING_H_
#define UISEM_ORDERING_H_

#include <span>
#include <string>
#include <vector>

#include "uisem/geometry.h"
#include "uisem/model.h"

namespace uisem {

// XY-cut reading order. A segment is split along horizontal whitespace
// bands (wider than `epsilon`) first, then along vertical ones; segments
// are recursed into until no band splits them, at which point the boxes are
// ordered top-to-bottom with tops within `epsilon` ordered left-to-right.
// Returns a permutation of box indices.
std::vector<size_t> XyCutOrder(std::span<const BBox> boxes, double epsilon = 1e-6);

// Reorders nodes in place, recursively inside every group.
void OrderNodes(std::vector<AccessibilityNode>& nodes, double epsilon = 1e-6);

// Minimum number of remove-and-reinsert moves turning `produced` into
// `truth`: n minus the longest increasing subsequence of the truth positions
// of `produced`. Throws SetMismatchError unless both are permutations of the
// same ids.
int InsertionDistance(std::span<const std::string> produced,
                      std::span<const std::string> truth);

// Length of the longest strictly increasing subsequence, O(n log n).
size_t LongestIncreasingSubsequence(std::span<const size_t> values);

}  // namespace uisem

#endif  // UISEM_ORDERING_H_
