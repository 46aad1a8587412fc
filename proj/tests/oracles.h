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

#ifndef UISEM_TESTS_ORACLES_H_
#define UISEM_TESTS_ORACLES_H_

// Slow, deliberately simple reference implementations. None of them calls
// the library code they are compared against; they share only BBox and the
// geometry primitives.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "uisem/geometry.h"
#include "uisem/model.h"

namespace uisem::oracle {

// ---------------------------------------------------------------------------
// Detection matching and average precision

// Greedy matching by repeated selection of the most confident unprocessed
// prediction (lowest index on ties); each takes the unmatched ground truth
// of its class with the highest IoU strictly above `iou` (lowest index on
// ties). Returns, per prediction, whether it is a true positive.
inline std::vector<bool> GreedyTruePositives(const std::vector<DetectedElement>& preds,
                                             const std::vector<DetectedElement>& gts,
                                             double iou) {
  std::vector<bool> done(preds.size(), false);
  std::vector<bool> taken(gts.size(), false);
  std::vector<bool> tp(preds.size(), false);
  for (size_t step = 0; step < preds.size(); ++step) {
    size_t pick = preds.size();
    for (size_t i = 0; i < preds.size(); ++i) {
      if (done[i]) continue;
      if (pick == preds.size() || preds[i].confidence > preds[pick].confidence) pick = i;
    }
    done[pick] = true;
    size_t best = gts.size();
    double best_iou = -1.0;
    for (size_t g = 0; g < gts.size(); ++g) {
      if (taken[g] || gts[g].type != preds[pick].type) continue;
      const double v = Iou(preds[pick].box, gts[g].box);
      if (v > iou && v > best_iou) {
        best = g;
        best_iou = v;
      }
    }
    if (best < gts.size()) {
      taken[best] = true;
      tp[pick] = true;
    }
  }
  return tp;
}

// All-points AP by walking every distinct confidence level: at each level
// the precision and recall of "keep everything at or above this level" are
// computed from scratch, and AP sums recall increments times the best
// precision reachable at that recall or beyond.
inline double RankWalkAp(const std::vector<std::pair<double, bool>>& detections,
                         int num_gt) {
  std::set<double, std::greater<>> levels;
  for (const auto& d : detections) levels.insert(d.first);
  std::vector<double> precision;
  std::vector<double> recall;
  for (double level : levels) {
    int kept = 0;
    int tp = 0;
    for (const auto& d : detections) {
      if (d.first >= level) {
        ++kept;
        tp += d.second ? 1 : 0;
      }
    }
    precision.push_back(static_cast<double>(tp) / kept);
    recall.push_back(static_cast<double>(tp) / num_gt);
  }
  double ap = 0.0;
  double previous_recall = 0.0;
  for (size_t k = 0; k < recall.size(); ++k) {
    double best = 0.0;
    for (size_t j = 0; j < recall.size(); ++j) {
      if (recall[j] >= recall[k]) best = std::max(best, precision[j]);
    }
    ap += (recall[k] - previous_recall) * best;
    previous_recall = recall[k];
  }
  return ap;
}

// Size of a maximum one-to-one matching between predictions and ground
// truths of the same class with IoU above `iou`, by trying every injection.
inline int MaxMatchingSize(const std::vector<DetectedElement>& preds,
                           const std::vector<DetectedElement>& gts, double iou) {
  std::vector<size_t> perm(gts.size());
  std::iota(perm.begin(), perm.end(), 0);
  int best = 0;
  do {
    int n = 0;
    for (size_t i = 0; i < std::min(preds.size(), perm.size()); ++i) {
      const auto& g = gts[perm[i]];
      n += g.type == preds[i].type && Iou(preds[i].box, g.box) > iou;
    }
    best = std::max(best, n);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

struct SweepChoice {
  double threshold = 0.0;
  double f_beta = 0.0;
};

// Tries every observed confidence of the class as a keep threshold and
// re-matches the kept predictions from scratch.
inline std::optional<SweepChoice> SweepThreshold(const std::vector<DetectedElement>& preds,
                                                 const std::vector<DetectedElement>& gts,
                                                 UIType type, double beta, double iou) {
  std::vector<DetectedElement> p;
  std::vector<DetectedElement> g;
  for (const auto& e : preds) if (e.type == type) p.push_back(e);
  for (const auto& e : gts) if (e.type == type) g.push_back(e);
  if (p.empty() || g.empty()) return std::nullopt;
  std::set<double> levels;
  for (const auto& e : p) levels.insert(e.confidence);
  std::optional<SweepChoice> best;
  for (double level : levels) {  // ascending: first maximum is the smallest
    std::vector<DetectedElement> kept;
    for (const auto& e : p) if (e.confidence >= level) kept.push_back(e);
    const auto tp_flags = GreedyTruePositives(kept, g, iou);
    const double tp = static_cast<double>(std::count(tp_flags.begin(), tp_flags.end(), true));
    const double precision = tp / kept.size();
    const double recall = tp / g.size();
    const double b2 = beta * beta;
    const double denom = b2 * precision + recall;
    const double f = denom > 0 ? (1 + b2) * precision * recall / denom : 0.0;
    if (!best || f > best->f_beta) best = SweepChoice{level, f};
  }
  return best;
}

// ---------------------------------------------------------------------------
// Suppression

// The keep-set of greedy suppression, found by enumerating every subset and
// returning the one that is self-consistent: a box is kept iff no kept box
// of higher priority conflicts with it. Priority is confidence, then lower
// index. The consistent subset is unique.
inline std::vector<bool> BruteForceKeepSet(
    const std::vector<DetectedElement>& boxes,
    const std::function<bool(const DetectedElement&, const DetectedElement&)>& conflicts) {
  const size_t n = boxes.size();
  auto higher = [&](size_t j, size_t i) {
    return boxes[j].confidence > boxes[i].confidence ||
           (boxes[j].confidence == boxes[i].confidence && j < i);
  };
  std::vector<bool> found;
  int solutions = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool consistent = true;
    for (size_t i = 0; i < n && consistent; ++i) {
      bool suppressed = false;
      for (size_t j = 0; j < n; ++j) {
        if (j != i && (mask >> j & 1u) && higher(j, i) && conflicts(boxes[j], boxes[i])) {
          suppressed = true;
        }
      }
      consistent = static_cast<bool>(mask >> i & 1u) == !suppressed;
    }
    if (consistent) {
      ++solutions;
      found.assign(n, false);
      for (size_t i = 0; i < n; ++i) found[i] = mask >> i & 1u;
    }
  }
  if (solutions != 1) return {};
  return found;
}

// ---------------------------------------------------------------------------
// Ordering

// Minimum number of remove-and-reinsert moves from `from` to the identity
// permutation, by breadth-first search over all permutations.
inline int BfsInsertionDistance(const std::vector<int>& from) {
  std::vector<int> target(from.size());
  std::iota(target.begin(), target.end(), 0);
  std::map<std::vector<int>, int> dist{{from, 0}};
  std::queue<std::vector<int>> frontier;
  frontier.push(from);
  while (!frontier.empty()) {
    auto cur = frontier.front();
    frontier.pop();
    const int d = dist[cur];
    if (cur == target) return d;
    for (size_t i = 0; i < cur.size(); ++i) {
      for (size_t j = 0; j < cur.size(); ++j) {
        if (i == j) continue;
        auto next = cur;
        const int v = next[i];
        next.erase(next.begin() + static_cast<long>(i));
        next.insert(next.begin() + static_cast<long>(j), v);
        if (dist.emplace(next, d + 1).second) frontier.push(next);
      }
    }
  }
  return -1;
}

// Distances from the identity to every permutation of size n, by one
// breadth-first search. A move is its own kind of inverse (move the element
// back), so this is also every permutation's distance to the identity.
inline std::map<std::vector<int>, int> BfsDistanceTable(int n) {
  std::vector<int> start(static_cast<size_t>(n));
  std::iota(start.begin(), start.end(), 0);
  std::map<std::vector<int>, int> dist{{start, 0}};
  std::queue<std::vector<int>> frontier;
  frontier.push(start);
  while (!frontier.empty()) {
    auto cur = frontier.front();
    frontier.pop();
    const int d = dist[cur];
    for (size_t i = 0; i < cur.size(); ++i) {
      for (size_t j = 0; j < cur.size(); ++j) {
        if (i == j) continue;
        auto next = cur;
        const int v = next[i];
        next.erase(next.begin() + static_cast<long>(i));
        next.insert(next.begin() + static_cast<long>(j), v);
        if (dist.emplace(next, d + 1).second) frontier.push(next);
      }
    }
  }
  return dist;
}

// Reading order by bands: boxes whose vertical extents overlap (directly or
// through a chain) form a band; bands run top to bottom. Inside a band,
// boxes whose horizontal extents chain together form a column; columns run
// left to right and are ordered recursively. A set that neither splits into
// bands nor columns is read by top, then left.
inline std::vector<size_t> BandSortOrder(const std::vector<BBox>& boxes,
                                         std::vector<size_t> ids, double eps = 1e-6) {
  if (ids.size() <= 1) return ids;
  auto components = [&](bool vertical) {
    // Union-find over pairwise projection overlap.
    std::vector<size_t> parent(ids.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<size_t(size_t)> find = [&](size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (size_t a = 0; a < ids.size(); ++a) {
      for (size_t b = a + 1; b < ids.size(); ++b) {
        const BBox& p = boxes[ids[a]];
        const BBox& q = boxes[ids[b]];
        const double gap = vertical ? std::max(p.top(), q.top()) - std::min(p.bottom(), q.bottom())
                                    : std::max(p.left(), q.left()) - std::min(p.right(), q.right());
        if (gap <= eps) parent[find(a)] = find(b);
      }
    }
    std::map<size_t, std::vector<size_t>> groups;
    for (size_t a = 0; a < ids.size(); ++a) groups[find(a)].push_back(ids[a]);
    std::vector<std::vector<size_t>> out;
    for (auto& [root, members] : groups) out.push_back(members);
    std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
      auto lo = [&](const std::vector<size_t>& m) {
        double v = std::numeric_limits<double>::infinity();
        for (size_t i : m) v = std::min(v, vertical ? boxes[i].top() : boxes[i].left());
        return v;
      };
      return lo(x) < lo(y);
    });
    return out;
  };
  for (bool vertical : {true, false}) {
    auto parts = components(vertical);
    if (parts.size() > 1) {
      std::vector<size_t> out;
      for (auto& part : parts) {
        auto sub = BandSortOrder(boxes, part, eps);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      return out;
    }
  }
  std::stable_sort(ids.begin(), ids.end(), [&](size_t a, size_t b) {
    if (std::abs(boxes[a].top() - boxes[b].top()) > eps) return boxes[a].top() < boxes[b].top();
    return boxes[a].left() < boxes[b].left();
  });
  return ids;
}

inline std::vector<size_t> BandSortOrder(const std::vector<BBox>& boxes, double eps = 1e-6) {
  std::vector<size_t> ids(boxes.size());
  std::iota(ids.begin(), ids.end(), 0);
  return BandSortOrder(boxes, ids, eps);
}

// ---------------------------------------------------------------------------
// Calibration

struct SweepCalibration {
  double threshold = 1.0;
  double precision = 0.0;
  bool target_met = false;
};

// Every distinct score is tried as a threshold, each recounted from scratch.
// Smallest threshold meeting the target; otherwise the best precision
// (smallest threshold among equals).
inline SweepCalibration ExhaustiveCalibration(const std::vector<double>& scores,
                                              const std::vector<bool>& labels,
                                              double target) {
  std::set<double> levels(scores.begin(), scores.end());
  std::optional<SweepCalibration> meeting;
  std::optional<SweepCalibration> best;
  for (double t : levels) {  // ascending
    int tp = 0;
    int fp = 0;
    for (size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] >= t) (labels[i] ? tp : fp) += 1;
    }
    const double precision = static_cast<double>(tp) / (tp + fp);
    if (!meeting && precision >= target) meeting = SweepCalibration{t, precision, true};
    if (!best || precision > best->precision) best = SweepCalibration{t, precision, false};
  }
  return meeting ? *meeting : *best;
}

}  // namespace uisem::oracle

#endif  // UISEM_TESTS_ORACLES_H_
