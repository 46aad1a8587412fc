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

#ifndef UISEM_SRC_UNION_FIND_H_
#define UISEM_SRC_UNION_FIND_H_

#include <numeric>
#include <vector>

namespace uisem::internal {

class UnionFind {
 public:
  explicit UnionFind(size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  size_t Find(size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  // The smaller root wins so that component ids are input-order stable.
  void Unite(size_t a, size_t b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

  // Components in order of their smallest member; members ascending.
  std::vector<std::vector<size_t>> Components() {
    std::vector<std::vector<size_t>> out;
    std::vector<long> slot(parent_.size(), -1);
    for (size_t i = 0; i < parent_.size(); ++i) {
      const size_t root = Find(i);
      if (slot[root] < 0) {
        slot[root] = static_cast<long>(out.size());
        out.emplace_back();
      }
      out[slot[root]].push_back(i);
    }
    return out;
  }

 private:
  std::vector<size_t> parent_;
};

}  // namespace uisem::internal

#endif  // UISEM_SRC_UNION_FIND_H_
