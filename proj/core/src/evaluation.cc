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

#include "uisem/evaluation.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "uisem/errors.h"
#include "uisem/ordering.h"

namespace uisem {
namespace {

using nlohmann::json;

std::vector<size_t> ByConfidence(std::span<const DetectedElement> preds) {
  std::vector<size_t> order(preds.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return preds[a].confidence > preds[b].confidence;
  });
  return order;
}

using IdSet = std::vector<std::string>;  // sorted

void CollectGroups(const AccessibilityNode& node, std::vector<std::pair<IdSet, NodeKind>>& out) {
  if (!node.is_group()) return;
  IdSet ids = ElementIds(node);
  std::sort(ids.begin(), ids.end());
  if (ids.size() >= 2) out.emplace_back(std::move(ids), node.kind);
  for (const auto& child : node.children) CollectGroups(child, out);
}

std::vector<std::pair<IdSet, NodeKind>> Groups(const AccessibilityTree& tree) {
  std::vector<std::pair<IdSet, NodeKind>> out;
  for (const auto& node : tree.nodes) CollectGroups(node, out);
  return out;
}

bool Subset(const IdSet& small, const IdSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

json CurveJson(const std::vector<PrPoint>& curve) {
  json out = json::array();
  for (const auto& p : curve) {
    out.push_back({{"confidence", p.confidence},
                   {"precision", p.precision},
                   {"recall", p.recall}});
  }
  return out;
}

json Optional(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string_view ToString(MatchCriterion criterion) {
  return criterion == MatchCriterion::kIouOverHalf ? "iou_over_half" : "center_hit";
}

bool Satisfies(const MatchSpec& spec, const BBox& pred, const BBox& gt) {
  if (spec.criterion == MatchCriterion::kCenterHit) return CenterIn(pred, gt);
  return Iou(pred, gt) > spec.iou_threshold;
}

MatchResult MatchDetections(std::span<const DetectedElement> preds,
                            std::span<const DetectedElement> gts,
                            const MatchSpec& spec) {
  MatchResult r;
  r.pred_is_tp.assign(preds.size(), false);
  std::vector<bool> gt_taken(gts.size(), false);
  for (size_t p : ByConfidence(preds)) {
    std::optional<size_t> best;
    double best_iou = -1.0;
    bool hits_taken = false;
    for (size_t g = 0; g < gts.size(); ++g) {
      if (gts[g].type != preds[p].type) continue;
      if (!Satisfies(spec, preds[p].box, gts[g].box)) continue;
      if (gt_taken[g]) {
        hits_taken = true;
        continue;
      }
      const double iou = Iou(preds[p].box, gts[g].box);
      if (iou > best_iou) {
        best = g;
        best_iou = iou;
      }
    }
    if (best) {
      gt_taken[*best] = true;
      r.pairs.emplace_back(p, *best);
      r.pred_is_tp[p] = true;
    } else if (hits_taken) {
      r.duplicates.push_back(p);
    } else {
      r.false_positives.push_back(p);
    }
  }
  for (size_t g = 0; g < gts.size(); ++g) {
    if (!gt_taken[g]) r.missed.push_back(g);
  }
  std::sort(r.duplicates.begin(), r.duplicates.end());
  std::sort(r.false_positives.begin(), r.false_positives.end());
  return r;
}

std::vector<PrPoint> PrCurve(std::span<const ScoredDetection> detections,
                             int num_gt) {
  std::vector<ScoredDetection> sorted(detections.begin(), detections.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<PrPoint> curve;
  int tp = 0;
  int fp = 0;
  for (size_t k = 0; k < sorted.size(); ++k) {
    (sorted[k].second ? tp : fp) += 1;
    if (k + 1 < sorted.size() && sorted[k + 1].first == sorted[k].first) continue;
    curve.push_back({sorted[k].first, static_cast<double>(tp) / (tp + fp),
                     num_gt > 0 ? static_cast<double>(tp) / num_gt : 0.0});
  }
  return curve;
}

double AllPointsAp(std::span<const ScoredDetection> detections, int num_gt) {
  if (num_gt <= 0) throw std::invalid_argument("AP needs ground truth");
  const auto curve = PrCurve(detections, num_gt);
  // Precision envelope, right to left.
  std::vector<double> envelope(curve.size());
  double running = 0.0;
  for (size_t k = curve.size(); k-- > 0;) {
    running = std::max(running, curve[k].precision);
    envelope[k] = running;
  }
  double ap = 0.0;
  double prev_recall = 0.0;
  for (size_t k = 0; k < curve.size(); ++k) {
    ap += (curve[k].recall - prev_recall) * envelope[k];
    prev_recall = curve[k].recall;
  }
  return ap;
}

ApReport AveragePrecision(std::span<const EvalScreen> screens,
                          const MatchSpec& spec) {
  std::array<std::vector<ScoredDetection>, kNumUITypes> scored;
  std::array<int, kNumUITypes> num_gt{};
  for (const auto& screen : screens) {
    const MatchResult m = MatchDetections(screen.preds, screen.gts, spec);
    for (size_t p = 0; p < screen.preds.size(); ++p) {
      scored[static_cast<size_t>(screen.preds[p].type)].emplace_back(
          screen.preds[p].confidence, m.pred_is_tp[p]);
    }
    for (const auto& g : screen.gts) ++num_gt[static_cast<size_t>(g.type)];
  }

  ApReport report{.spec = spec};
  double sum = 0.0;
  double weighted = 0.0;
  int defined = 0;
  int total_gt = 0;
  for (UIType type : DetectorClasses()) {
    const size_t t = static_cast<size_t>(type);
    ClassAp c{.type = type,
              .num_gt = num_gt[t],
              .num_pred = static_cast<int>(scored[t].size())};
    c.curve = PrCurve(scored[t], num_gt[t]);
    if (num_gt[t] > 0) {
      c.ap = AllPointsAp(scored[t], num_gt[t]);
      sum += *c.ap;
      weighted += *c.ap * num_gt[t];
      total_gt += num_gt[t];
      ++defined;
    } else {
      report.undefined.push_back(type);
    }
    report.per_class.push_back(std::move(c));
  }
  if (defined > 0) {
    report.mean_ap = sum / defined;
    report.weighted_mean_ap = weighted / total_gt;
  }
  return report;
}

void ConfusionMatrix::Add(const ConfusionMatrix& other) {
  for (size_t g = 0; g < cells.size(); ++g) {
    for (size_t p = 0; p < cells[g].size(); ++p) cells[g][p] += other.cells[g][p];
    missed[g] += other.missed[g];
    no_gt[g] += other.no_gt[g];
    duplicate[g] += other.duplicate[g];
  }
}

ConfusionMatrix ComputeConfusion(std::span<const DetectedElement> preds,
                                 std::span<const DetectedElement> gts,
                                 double iou_threshold) {
  ConfusionMatrix m;
  std::vector<bool> gt_taken(gts.size(), false);
  for (size_t p : ByConfidence(preds)) {
    const size_t pt = static_cast<size_t>(preds[p].type);
    std::optional<size_t> best;
    double best_iou = -1.0;
    bool hits_taken = false;
    for (size_t g = 0; g < gts.size(); ++g) {
      const double iou = Iou(preds[p].box, gts[g].box);
      if (!(iou > iou_threshold)) continue;
      if (gt_taken[g]) {
        hits_taken = true;
      } else if (iou > best_iou) {
        best = g;
        best_iou = iou;
      }
    }
    if (best) {
      gt_taken[*best] = true;
      ++m.cells[static_cast<size_t>(gts[*best].type)][pt];
    } else {
      ++m.no_gt[pt];
      if (hits_taken) ++m.duplicate[pt];
    }
  }
  for (size_t g = 0; g < gts.size(); ++g) {
    if (!gt_taken[g]) ++m.missed[static_cast<size_t>(gts[g].type)];
  }
  return m;
}

double FBeta(double precision, double recall, double beta) {
  const double b2 = beta * beta;
  const double denom = b2 * precision + recall;
  return denom > 0.0 ? (1.0 + b2) * precision * recall / denom : 0.0;
}

std::vector<ThresholdChoice> TuneThresholds(std::span<const EvalScreen> screens,
                                            double beta, const MatchSpec& spec) {
  std::array<std::vector<ScoredDetection>, kNumUITypes> scored;
  std::array<int, kNumUITypes> num_gt{};
  for (const auto& screen : screens) {
    const MatchResult m = MatchDetections(screen.preds, screen.gts, spec);
    for (size_t p = 0; p < screen.preds.size(); ++p) {
      scored[static_cast<size_t>(screen.preds[p].type)].emplace_back(
          screen.preds[p].confidence, m.pred_is_tp[p]);
    }
    for (const auto& g : screen.gts) ++num_gt[static_cast<size_t>(g.type)];
  }
  std::vector<ThresholdChoice> out;
  for (UIType type : DetectorClasses()) {
    const size_t t = static_cast<size_t>(type);
    ThresholdChoice choice{.type = type};
    if (scored[t].empty()) {
      choice.warning = "no predictions; threshold 0";
      out.push_back(choice);
      continue;
    }
    if (num_gt[t] == 0) {
      choice.threshold = 1.0;
      choice.warning = "no ground truth; threshold 1";
      out.push_back(choice);
      continue;
    }
    // The curve runs from high to low confidence; >= keeps the smallest
    // threshold on ties.
    bool first = true;
    for (const PrPoint& p : PrCurve(scored[t], num_gt[t])) {
      const double f = FBeta(p.precision, p.recall, beta);
      if (first || f >= choice.f_beta) {
        choice.threshold = p.confidence;
        choice.f_beta = f;
        choice.precision = p.precision;
        choice.recall = p.recall;
        first = false;
      }
    }
    out.push_back(choice);
  }
  return out;
}

GroupingStats GroupingMetrics(std::span<const AccessibilityTree> produced,
                              std::span<const AccessibilityTree> truth) {
  if (produced.size() != truth.size()) {
    throw IdMismatchError("produced and truth trees differ in screen count");
  }
  GroupingStats s;
  for (size_t i = 0; i < produced.size(); ++i) {
    const auto& p = produced[i];
    const auto& t = truth[i];
    if (p.screen_id != t.screen_id) {
      throw IdMismatchError("screen '" + p.screen_id + "' paired with '" +
                            t.screen_id + "'");
    }
    IdSet pid = ElementIds(p);
    IdSet tid = ElementIds(t);
    std::sort(pid.begin(), pid.end());
    std::sort(tid.begin(), tid.end());
    if (pid != tid) {
      throw IdMismatchError("screen '" + p.screen_id + "': element ids differ");
    }
    ++s.screens;
    s.elements += static_cast<int>(pid.size());
    s.top_level_nodes += static_cast<int>(p.nodes.size());

    const auto pg = Groups(p);
    const auto tg = Groups(t);
    s.groups_made += static_cast<int>(pg.size());
    s.truth_groups += static_cast<int>(tg.size());
    for (const auto& [ids, kind] : pg) {
      bool exact = false;
      bool inside = false;
      for (const auto& [truth_ids, truth_kind] : tg) {
        exact |= ids == truth_ids;
        inside |= Subset(ids, truth_ids);
      }
      s.correct_groups += exact;
      if (!inside) {
        ++s.incorrectly_grouped;
        ++s.incorrect_by_kind[kind];
      }
    }
    for (const auto& [truth_ids, truth_kind] : tg) {
      bool exact = false;
      bool covered = false;
      for (const auto& [ids, kind] : pg) {
        exact |= ids == truth_ids;
        covered |= Subset(truth_ids, ids);
      }
      s.recovered_groups += exact;
      if (!covered) {
        ++s.should_have_grouped;
        ++s.should_have_by_kind[truth_kind];
      }
    }
  }
  if (s.elements > 0) {
    s.reduction = 1.0 - static_cast<double>(s.top_level_nodes) / s.elements;
  }
  return s;
}

double OrderingStats::perfect_fraction() const {
  return screens > 0 ? static_cast<double>(perfect) / screens : 0.0;
}

double OrderingStats::under_one_per_ten_fraction() const {
  return screens > 0 ? static_cast<double>(under_one_per_ten) / screens : 0.0;
}

OrderingStats OrderingMetrics(std::span<const std::vector<std::string>> produced,
                              std::span<const std::vector<std::string>> truth) {
  if (produced.size() != truth.size()) {
    throw SetMismatchError("produced and truth differ in screen count");
  }
  OrderingStats s;
  long total = 0;
  for (size_t i = 0; i < produced.size(); ++i) {
    const int d = InsertionDistance(produced[i], truth[i]);
    const long n = static_cast<long>(truth[i].size());
    ++s.screens;
    s.perfect += d == 0;
    s.under_one_per_ten += static_cast<long>(d) * 10 < n;
    s.distances.push_back(d);
    total += d;
  }
  if (s.screens > 0) s.mean_distance = static_cast<double>(total) / s.screens;
  return s;
}

json ToJson(const ApReport& r) {
  json classes = json::array();
  for (const auto& c : r.per_class) {
    classes.push_back({{"type", std::string(ToString(c.type))},
                       {"num_gt", c.num_gt},
                       {"num_pred", c.num_pred},
                       {"ap", Optional(c.ap)},
                       {"pr_curve", CurveJson(c.curve)}});
  }
  json undefined = json::array();
  for (UIType t : r.undefined) undefined.push_back(std::string(ToString(t)));
  return {{"criterion", std::string(ToString(r.spec.criterion))},
          {"per_class", std::move(classes)},
          {"mean_ap", Optional(r.mean_ap)},
          {"weighted_mean_ap", Optional(r.weighted_mean_ap)},
          {"undefined_classes", std::move(undefined)}};
}

json ToJson(const ConfusionMatrix& m) {
  json rows = json::object();
  json missed = json::object();
  json no_gt = json::object();
  json duplicate = json::object();
  for (size_t g = 0; g < m.cells.size(); ++g) {
    const std::string gname(ToString(static_cast<UIType>(g)));
    json row = json::object();
    for (size_t p = 0; p < m.cells[g].size(); ++p) {
      if (m.cells[g][p] != 0) row[std::string(ToString(static_cast<UIType>(p)))] = m.cells[g][p];
    }
    if (!row.empty()) rows[gname] = std::move(row);
    if (m.missed[g] != 0) missed[gname] = m.missed[g];
    if (m.no_gt[g] != 0) no_gt[gname] = m.no_gt[g];
    if (m.duplicate[g] != 0) duplicate[gname] = m.duplicate[g];
  }
  return {{"cells", std::move(rows)},
          {"missed", std::move(missed)},
          {"no_gt", std::move(no_gt)},
          {"duplicate", std::move(duplicate)}};
}

json ToJson(const GroupingStats& s) {
  auto by_kind = [](const std::map<NodeKind, int>& m) {
    json out = json::object();
    for (const auto& [k, v] : m) out[std::string(ToString(k))] = v;
    return out;
  };
  return {{"screens", s.screens},
          {"elements", s.elements},
          {"top_level_nodes", s.top_level_nodes},
          {"reduction", s.reduction},
          {"groups_made", s.groups_made},
          {"correct_groups", s.correct_groups},
          {"incorrectly_grouped", s.incorrectly_grouped},
          {"truth_groups", s.truth_groups},
          {"recovered_groups", s.recovered_groups},
          {"should_have_grouped", s.should_have_grouped},
          {"incorrect_by_kind", by_kind(s.incorrect_by_kind)},
          {"should_have_by_kind", by_kind(s.should_have_by_kind)}};
}

json ToJson(const OrderingStats& s) {
  return {{"screens", s.screens},
          {"perfect", s.perfect},
          {"perfect_fraction", s.perfect_fraction()},
          {"under_one_per_ten", s.under_one_per_ten},
          {"under_one_per_ten_fraction", s.under_one_per_ten_fraction()},
          {"mean_distance", s.mean_distance},
          {"distances", s.distances}};
}

}  // namespace uisem
