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

#ifndef UISEM_TREE_H_
#define UISEM_TREE_H_

#include <span>
#include <string>

#include "uisem/config.h"
#include "uisem/model.h"
#include "uisem/raster.h"

namespace uisem {

// Groups refined elements (tabs, text, picture subtitles, containers),
// orders the result with XY-cut at every level, infers which tab is
// selected when a raster is available, and fills group alt text and
// clickability. Every element appears exactly once in the tree.
AccessibilityTree BuildTree(const std::string& screen_id,
                            std::span<const DetectedElement> elements,
                            const Raster* raster, const HeuristicConfig& config);

// Number of group nodes at any depth.
int CountGroups(const AccessibilityTree& tree);

}  // namespace uisem

#endif  // UISEM_TREE_H_
