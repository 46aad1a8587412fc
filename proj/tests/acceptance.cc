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

// Acceptance checks: one PASS/FAIL line per criterion. Expected values come
// from the independent oracles in oracles.h or from the generator's truth.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gap_fixtures.h"
#include "oracles.h"
#include "uisem/evaluation.h"
#include "uisem/gap_analysis.h"
#include "uisem/json_io.h"
#include "uisem/ordering.h"
#include "uisem/pipeline.h"
#include "uisem/refinement.h"
#include "uisem/synthgen.h"
#include "uisem/tree.h"

namespace uisem {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

// ---------------------------------------------------------------------------
// AC1: average precision against the rank-walk oracle.

Outcome ApOracleEquivalence() {
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  const std::array<UIType, 3> classes = {UIType::kIcon, UIType::kText, UIType::kPicture};
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  auto pick = [&](int n) { return static_cast<int>(rng() % n); };

  int instances = 0;
  int compared = 0;
  double worst = 0.0;
  for (; instances < 500; ++instances) {
    const int num_screens = 1 + pick(3);
    const int num_classes = 1 + pick(3);
    std::vector<EvalScreen> screens(num_screens);
    for (int s = 0; s < num_screens; ++s) screens[s].screen_id = "s" + std::to_string(s);
    for (int c = 0; c < num_classes; ++c) {
      const UIType type = classes[c];
      const int num_gt = pick(11);
      const int num_pred = pick(11);
      for (int g = 0; g < num_gt; ++g) {
        const double l = 0.1 * pick(8);
        const double t = 0.1 * pick(8);
        screens[pick(num_screens)].gts.push_back(
            {.id = "g" + std::to_string(c) + "-" + std::to_string(g),
             .box = BBox(l, t, l + 0.1 + 0.1 * pick(2), t + 0.1 + 0.1 * pick(2)),
             .type = type});
      }
      for (int p = 0; p < num_pred; ++p) {
        EvalScreen& screen = screens[pick(num_screens)];
        BBox box(0.0, 0.0, 0.1, 0.1);
        if (!screen.gts.empty() && pick(3) != 0) {
          // Near a ground truth (of any class), so matches and misses mix.
          const BBox& g = screen.gts[pick(static_cast<int>(screen.gts.size()))].box;
          const double d = 0.04 * g.width();
          box = *BBox::TryMake(std::clamp(g.left() + uniform(-d, d), 0.0, 1.0),
                               std::clamp(g.top() + uniform(-d, d), 0.0, 1.0),
                               std::clamp(g.right() + uniform(-d, d), 0.0, 1.0),
                               std::clamp(g.bottom() + uniform(-d, d), 0.0, 1.0));
        } else {
          const double l = uniform(0.0, 0.8);
          const double t = uniform(0.0, 0.8);
          box = BBox(l, t, l + uniform(0.05, 0.2), t + uniform(0.05, 0.2));
        }
        // Coarse confidences so ties are common.
        screen.preds.push_back({.id = "p" + std::to_string(c) + "-" + std::to_string(p),
                                .box = box,
                                .type = type,
                                .confidence = 0.1 * (1 + pick(10))});
      }
    }

    const ApReport report =
        AveragePrecision(screens, {.criterion = MatchCriterion::kIouOverHalf});
    std::map<UIType, std::vector<std::pair<double, bool>>> pooled;
    std::map<UIType, int> gt_count;
    for (const auto& screen : screens) {
      const auto tp = oracle::GreedyTruePositives(screen.preds, screen.gts, 0.5);
      for (size_t i = 0; i < screen.preds.size(); ++i) {
        pooled[screen.preds[i].type].push_back({screen.preds[i].confidence, tp[i]});
      }
      for (const auto& g : screen.gts) ++gt_count[g.type];
    }
    std::vector<double> defined;
    for (const auto& c : report.per_class) {
      if (gt_count[c.type] == 0) {
        if (c.ap.has_value()) return {false, "AP defined for a class without ground truth"};
        continue;
      }
      const double expected = oracle::RankWalkAp(pooled[c.type], gt_count[c.type]);
      if (!c.ap) return {false, "AP undefined for a class with ground truth"};
      worst = std::max(worst, std::abs(*c.ap - expected));
      defined.push_back(expected);
      ++compared;
    }
    if (!defined.empty()) {
      const double mean = std::accumulate(defined.begin(), defined.end(), 0.0) / defined.size();
      if (!report.mean_ap) return {false, "mean AP undefined"};
      worst = std::max(worst, std::abs(*report.mean_ap - mean));
    }
  }
  const double seconds = SecondsSince(start);
  return {worst <= 1e-9 && seconds < 10.0,
          Fmt("%d instances, %d class APs, max |diff| %.3g (tol 1e-9), %.2f s (limit 10 s)",
              instances, compared, worst, seconds)};
}

// ---------------------------------------------------------------------------
// AC2: insertion distance against breadth-first search.

Outcome InsertionDistanceOracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(202);
  int cases = 0;
  int mismatches = 0;
  for (int n = 1; n <= 6; ++n) {
    const auto table = oracle::BfsDistanceTable(n);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      const int expected = table.at(perm);
      // The identity truth plus three random relabelings of the same moves.
      for (int variant = 0; variant < 4; ++variant) {
        std::vector<std::string> names(n);
        for (int i = 0; i < n; ++i) names[i] = "e" + std::to_string(i);
        if (variant > 0) std::shuffle(names.begin(), names.end(), rng);
        std::vector<std::string> truth = names;
        std::vector<std::string> produced(n);
        for (int i = 0; i < n; ++i) produced[i] = names[perm[i]];
        std::vector<size_t> ranks(perm.begin(), perm.end());
        const int lis = n - static_cast<int>(LongestIncreasingSubsequence(ranks));
        if (InsertionDistance(produced, truth) != expected || lis != expected) ++mismatches;
        ++cases;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  const double seconds = SecondsSince(start);
  return {mismatches == 0 && seconds < 30.0,
          Fmt("%d cases over n = 1..6 (every permutation, 4 labelings), %d mismatches, "
              "%.2f s (limit 30 s)",
              cases, mismatches, seconds)};
}

// ---------------------------------------------------------------------------
// AC3: XY-cut against the band-sort oracle on grid-separable layouts.

// Rows separated by horizontal gaps; each row holds columns separated by
// vertical gaps; each column holds a vertical stack of boxes.
std::vector<BBox> GridLayout(std::mt19937_64& rng) {
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % (hi - lo + 1)); };
  std::vector<BBox> boxes;
  const int rows = pick(1, 6);
  const double row_span = 1.0 / rows;
  for (int r = 0; r < rows; ++r) {
    const double row_top = r * row_span + uniform(0.005, 0.02);
    const double row_bottom = (r + 1) * row_span - uniform(0.005, 0.02);
    const int cols = pick(1, 5);
    const double col_span = 1.0 / cols;
    for (int c = 0; c < cols; ++c) {
      const double col_left = c * col_span + uniform(0.005, 0.02);
      const double col_right = (c + 1) * col_span - uniform(0.005, 0.02);
      const int stack = pick(1, 3);
      const double slot = (row_bottom - row_top) / stack;
      for (int k = 0; k < stack; ++k) {
        // Varying heights and widths within the slot.
        const double t = row_top + k * slot + uniform(0.0, 0.2) * slot;
        const double b = row_top + (k + 1) * slot - uniform(0.05, 0.3) * slot;
        const double l = col_left + uniform(0.0, 0.2) * (col_right - col_left);
        const double rr = col_right - uniform(0.0, 0.3) * (col_right - col_left);
        boxes.emplace_back(l, t, rr, b);
      }
    }
  }
  std::shuffle(boxes.begin(), boxes.end(), rng);
  return boxes;
}

Outcome XyCutOracle() {
  std::mt19937_64 rng(303);
  int layouts = 0;
  int mismatches = 0;
  int max_distance = 0;
  size_t elements = 0;
  for (; layouts < 200; ++layouts) {
    const auto boxes = GridLayout(rng);
    elements += boxes.size();
    const auto got = XyCutOrder(boxes);
    const auto expected = oracle::BandSortOrder(boxes);
    std::vector<std::string> a;
    std::vector<std::string> b;
    for (size_t i : got) a.push_back(std::to_string(i));
    for (size_t i : expected) b.push_back(std::to_string(i));
    if (a.size() != b.size()) {
      ++mismatches;
      continue;
    }
    const int d = InsertionDistance(a, b);
    max_distance = std::max(max_distance, d);
    mismatches += got != expected;
  }
  return {mismatches == 0 && max_distance == 0,
          Fmt("%d layouts (%zu boxes), %d order mismatches, max insertion distance %d",
              layouts, elements, mismatches, max_distance)};
}

// ---------------------------------------------------------------------------
// AC4: suppression invariants.

std::optional<size_t> GroupOf(UIType type, const HeuristicConfig& config) {
  for (size_t g = 0; g < config.dedup_groups.size(); ++g) {
    const auto& members = config.dedup_groups[g];
    if (std::find(members.begin(), members.end(), type) != members.end()) return g;
  }
  return std::nullopt;
}

int SameGroupViolations(const std::vector<DetectedElement>& elements,
                        const HeuristicConfig& config) {
  int violations = 0;
  for (size_t i = 0; i < elements.size(); ++i) {
    const auto gi = GroupOf(elements[i].type, config);
    if (!gi) continue;
    for (size_t j = i + 1; j < elements.size(); ++j) {
      if (GroupOf(elements[j].type, config) == gi &&
          Iou(elements[i].box, elements[j].box) > config.dedup_iou) {
        ++violations;
      }
    }
  }
  return violations;
}

struct KeepSetCheck {
  int components = 0;     // conflict components of two or more boxes
  int brute_forced = 0;   // of those, small enough for the subset oracle
  int max_not_kept = 0;   // components whose top-priority box was removed
  int oracle_mismatch = 0;
};

// Compares a suppression stage with the oracle on each connected component
// of its conflict graph.
void CheckKeepSet(const std::vector<DetectedElement>& in,
                  const std::vector<DetectedElement>& out,
                  const std::function<bool(const DetectedElement&, const DetectedElement&)>&
                      conflicts,
                  KeepSetCheck& check) {
  std::set<std::string> survivors;
  for (const auto& e : out) survivors.insert(e.id);
  const size_t n = in.size();
  std::vector<int> component(n, -1);
  int next = 0;
  for (size_t s = 0; s < n; ++s) {
    if (component[s] >= 0) continue;
    std::vector<size_t> stack = {s};
    component[s] = next;
    while (!stack.empty()) {
      const size_t i = stack.back();
      stack.pop_back();
      for (size_t j = 0; j < n; ++j) {
        if (component[j] < 0 && conflicts(in[i], in[j])) {
          component[j] = next;
          stack.push_back(j);
        }
      }
    }
    ++next;
  }
  for (int c = 0; c < next; ++c) {
    std::vector<DetectedElement> members;  // in input order
    for (size_t i = 0; i < n; ++i) {
      if (component[i] == c) members.push_back(in[i]);
    }
    if (members.size() < 2) continue;
    ++check.components;
    size_t top = 0;
    for (size_t i = 1; i < members.size(); ++i) {
      if (members[i].confidence > members[top].confidence) top = i;
    }
    if (!survivors.contains(members[top].id)) ++check.max_not_kept;
    if (members.size() > 8) continue;
    ++check.brute_forced;
    const auto keep = oracle::BruteForceKeepSet(members, conflicts);
    if (keep.empty()) {
      ++check.oracle_mismatch;
      continue;
    }
    for (size_t i = 0; i < members.size(); ++i) {
      if (keep[i] != survivors.contains(members[i].id)) {
        ++check.oracle_mismatch;
        break;
      }
    }
  }
}

Outcome SuppressionInvariants() {
  GenSpec spec;
  spec.seed = 404;
  spec.num_screens = 1000;
  spec.render = false;
  spec.noise.jitter_sigma = 0.04;
  spec.noise.confidence_sigma = 0.25;
  spec.noise.spurious_rate = 1.5;
  spec.noise.duplicate_probability = {
      {UIType::kIcon, 0.4},      {UIType::kPicture, 0.4},          {UIType::kText, 0.3},
      {UIType::kContainer, 0.2}, {UIType::kSegmentedControl, 0.3}, {UIType::kTextField, 0.3}};
  spec.noise.confusion = {{UIType::kIcon, UIType::kPicture, 0.15},
                          {UIType::kPicture, UIType::kIcon, 0.15},
                          {UIType::kSegmentedControl, UIType::kTextField, 0.1},
                          {UIType::kTextField, UIType::kContainer, 0.1}};
  const Corpus corpus = GenerateCorpus(spec);
  const HeuristicConfig config;

  int violations_after_dedup = 0;
  int violations_final = 0;
  KeepSetCheck nms;
  KeepSetCheck dedup;
  for (const auto& s : corpus.screens) {
    const auto filtered = FilterByConfidence(s.noisy.elements, config);
    const auto after_nms = NmsWithinClass(filtered, config.nms_iou);
    const auto after_dedup = DedupCrossClass(after_nms, config);
    violations_after_dedup += SameGroupViolations(after_dedup, config);
    violations_final += SameGroupViolations(Refine(s.noisy.elements, s.ocr, config).elements,
                                            config);
    CheckKeepSet(
        filtered, after_nms,
        [&](const DetectedElement& a, const DetectedElement& b) {
          return &a != &b && a.id != b.id && a.type == b.type &&
                 Iou(a.box, b.box) >= config.nms_iou;
        },
        nms);
    CheckKeepSet(
        after_nms, after_dedup,
        [&](const DetectedElement& a, const DetectedElement& b) {
          if (a.id == b.id) return false;
          const auto ga = GroupOf(a.type, config);
          return ga && ga == GroupOf(b.type, config) && Iou(a.box, b.box) > config.dedup_iou;
        },
        dedup);
  }
  const bool pass = violations_after_dedup == 0 && violations_final == 0 &&
                    nms.max_not_kept == 0 && dedup.max_not_kept == 0 &&
                    nms.oracle_mismatch == 0 && dedup.oracle_mismatch == 0 &&
                    nms.brute_forced > 0 && dedup.brute_forced > 0;
  return {pass,
          Fmt("%zu screens; same-group pairs with IoU > %.1f: %d after dedup, %d in final "
              "output; NMS components %d (%d brute-forced, %d oracle mismatches, %d max "
              "dropped); dedup components %d (%d brute-forced, %d mismatches, %d max dropped)",
              corpus.screens.size(), config.dedup_iou, violations_after_dedup,
              violations_final, nms.components, nms.brute_forced, nms.oracle_mismatch,
              nms.max_not_kept, dedup.components, dedup.brute_forced, dedup.oracle_mismatch,
              dedup.max_not_kept)};
}

// ---------------------------------------------------------------------------
// AC5 / AC6: grouping and ordering on a zero-jitter corpus.

struct CorpusRun {
  GroupingStats grouping;
  OrderingStats ordering;
  int errors = 0;
};

CorpusRun RunZeroJitterCorpus() {
  GenSpec spec;
  spec.seed = 505;
  spec.num_screens = 300;
  const Corpus corpus = GenerateCorpus(spec);
  std::vector<AccessibilityTree> produced;
  std::vector<AccessibilityTree> truth;
  std::vector<std::vector<std::string>> produced_order;
  std::vector<std::vector<std::string>> truth_order;
  CorpusRun run;
  for (const auto& s : corpus.screens) {
    Screen input = s.noisy;
    input.raster = s.truth.raster;
    const ScreenOutcome out = ProcessScreen(input, s.ocr, {});
    run.errors += out.error.has_value();
    produced.push_back(out.tree);
    truth.push_back(s.truth_tree);
    produced_order.push_back(ElementIds(out.tree));
    truth_order.push_back(s.truth_order);
  }
  run.grouping = GroupingMetrics(produced, truth);
  run.ordering = OrderingMetrics(produced_order, truth_order);
  return run;
}

Outcome GroupingRecovery(const CorpusRun& run) {
  const GroupingStats& g = run.grouping;
  const double recovered = g.truth_groups ? double(g.recovered_groups) / g.truth_groups : 0.0;
  const double incorrect = g.groups_made ? double(g.incorrectly_grouped) / g.groups_made : 0.0;
  return {run.errors == 0 && g.truth_groups > 0 && recovered >= 0.95 && incorrect <= 0.05,
          Fmt("%d screens; recovered %d/%d truth groups (%.1f%%, need >= 95%%); incorrectly "
              "grouped %d/%d (%.1f%%, need <= 5%%; reference 5.6%%); element-count reduction "
              "%.1f%% (reference 48.5%%)",
              g.screens, g.recovered_groups, g.truth_groups, 100 * recovered,
              g.incorrectly_grouped, g.groups_made, 100 * incorrect, 100 * g.reduction)};
}

Outcome OrderingQuality(const CorpusRun& run) {
  const OrderingStats& o = run.ordering;
  // Every generated layout is separable, so all of them must be perfect.
  return {o.under_one_per_ten_fraction() >= 0.90 && o.perfect_fraction() == 1.0,
          Fmt("%d screens; distance < elements/10: %.1f%% (need >= 90%%; reference 90.8%%); "
              "perfect on separable layouts: %.1f%% (need 100%%); mean distance %.3f",
              o.screens, 100 * o.under_one_per_ten_fraction(), 100 * o.perfect_fraction(),
              o.mean_distance)};
}

// ---------------------------------------------------------------------------
// AC7: selection state.

struct SelectionTally {
  int controls = 0;  // tab bars or segmented rows
  int flags = 0;
  int correct = 0;
  int wrong_positive = 0;
  int set = 0;
  int skipped = 0;  // contrast exactly one step: neither bucket
};

std::map<std::vector<std::string>, std::optional<bool>> TabFlags(const AccessibilityTree& tree) {
  std::map<std::vector<std::string>, std::optional<bool>> out;
  for (const auto& node : tree.nodes) {
    if (node.kind != NodeKind::kTabButton) continue;
    auto ids = ElementIds(node);
    std::sort(ids.begin(), ids.end());
    out[ids] = node.selected;
  }
  return out;
}

void TallyTabs(const Corpus& corpus, bool high, SelectionTally& t) {
  const HeuristicConfig config;
  for (const auto& s : corpus.screens) {
    if (high ? s.tint_contrast <= 1.0 : s.tint_contrast >= 1.0) {
      ++t.skipped;
      continue;
    }
    ++t.controls;
    const auto expected = TabFlags(s.truth_tree);
    const auto got = TabFlags(
        BuildTree(s.truth.screen_id, s.truth.elements, s.truth.raster.get(), config));
    for (const auto& [ids, flag] : expected) {
      ++t.flags;
      auto it = got.find(ids);
      const std::optional<bool> g = it == got.end() ? std::nullopt : it->second;
      t.correct += g.has_value() && g == flag;
      t.set += g.has_value();
      t.wrong_positive += g == true && flag != true;
    }
  }
}

void TallySegments(const Corpus& corpus, bool high, SelectionTally& t) {
  for (const auto& s : corpus.screens) {
    if (high ? s.tint_contrast <= 1.0 : s.tint_contrast >= 1.0) {
      ++t.skipped;
      continue;
    }
    ++t.controls;
    const auto out = InferSemantics(s.truth.elements, s.truth.raster.get(), {});
    for (const auto& e : out) {
      if (e.type != UIType::kSegmentedControl) continue;
      const std::optional<bool> flag = s.labels.at(e.id).selected;
      ++t.flags;
      t.correct += e.selected.has_value() && e.selected == flag;
      t.set += e.selected.has_value();
      t.wrong_positive += e.selected == true && flag != true;
    }
  }
}

Outcome SelectionState() {
  auto corpus = [](Template layout, std::uint64_t seed, double low_contrast) {
    GenSpec spec;
    spec.seed = seed;
    spec.num_screens = 200;
    spec.template_mix = {{layout, 1.0}};
    spec.low_contrast_fraction = low_contrast;
    return GenerateCorpus(spec);
  };
  SelectionTally tabs;
  SelectionTally segments;
  SelectionTally low_tabs;
  SelectionTally low_segments;
  TallyTabs(corpus(Template::kTabBar, 701, 0.0), true, tabs);
  TallySegments(corpus(Template::kSegmented, 702, 0.0), true, segments);
  TallyTabs(corpus(Template::kTabBar, 703, 1.0), false, low_tabs);
  TallySegments(corpus(Template::kSegmented, 704, 1.0), false, low_segments);

  const bool pass = tabs.controls == 200 && segments.controls == 200 &&
                    tabs.correct == tabs.flags && segments.correct == segments.flags &&
                    low_tabs.controls == 200 && low_segments.controls == 200 &&
                    low_tabs.set == 0 && low_segments.set == 0 &&
                    low_tabs.wrong_positive == 0 && low_segments.wrong_positive == 0;
  return {pass,
          Fmt("contrast > 1 step: tab bars %d, flags correct %d/%d; segmented rows %d, flags "
              "correct %d/%d. contrast < 1 step: tab bars %d, flags set %d, wrong positives "
              "%d; segmented rows %d, flags set %d, wrong positives %d",
              tabs.controls, tabs.correct, tabs.flags, segments.controls, segments.correct,
              segments.flags, low_tabs.controls, low_tabs.set, low_tabs.wrong_positive,
              low_segments.controls, low_segments.set, low_segments.wrong_positive)};
}

// ---------------------------------------------------------------------------
// AC8: clickability calibration.

Outcome ClickabilityCalibration() {
  const auto icons = GenerateIconSet(5000, 808);
  const auto [train, validation] = SplitTrainValidation(icons, 0.2, 808);
  const TrainingReport report = TrainClickability(train, validation, 0.90);
  std::vector<double> scores;
  std::vector<bool> labels;
  for (const auto& icon : validation) {
    scores.push_back(report.model.Score(icon.features));
    labels.push_back(icon.clickable);
  }
  const Calibration scan = CalibrateThreshold(scores, labels, 0.90);
  const auto sweep = oracle::ExhaustiveCalibration(scores, labels, 0.90);
  const bool scan_equals_sweep = scan.threshold == sweep.threshold &&
                                 std::abs(scan.precision - sweep.precision) <= 1e-12 &&
                                 scan.target_met == sweep.target_met;
  const bool model_uses_scan = report.model.threshold == scan.threshold &&
                               report.calibration.threshold == scan.threshold;
  const Calibration& c = report.calibration;
  return {c.target_met && c.precision >= 0.90 && scan_equals_sweep && model_uses_scan,
          Fmt("%zu icons (%zu train / %zu validation); validation precision %.4f (need >= "
              "0.90), recall %.4f at threshold %.6f; scan %s exhaustive sweep",
              icons.size(), train.size(), validation.size(), c.precision, c.recall,
              c.threshold, scan_equals_sweep && model_uses_scan ? "equals" : "DIFFERS FROM")};
}

// ---------------------------------------------------------------------------
// AC9: gap analysis fixtures.

Outcome GapFixtures() {
  const auto fixtures = testing::GapFixtures();
  int wrong = 0;
  std::map<GapCategory, int> coverage;
  int exceptions = 0;
  int excluded = 0;
  std::string first_wrong;
  for (const auto& f : fixtures) {
    const ScreenGap gap = AnalyzeGaps(f.name, f.annotations, f.exposed, HeuristicConfig{});
    bool ok = gap.annotations.size() == f.expected.size() &&
              gap.excluded_fullscreen == f.excluded_fullscreen;
    for (size_t i = 0; ok && i < f.expected.size(); ++i) {
      const bool exception = !f.via_exception.empty() && f.via_exception[i];
      ok = gap.annotations[i].category == f.expected[i] &&
           gap.annotations[i].via_icon_exception == exception;
      ++coverage[f.expected[i]];
      exceptions += exception;
    }
    excluded += f.excluded_fullscreen;
    if (!ok) {
      ++wrong;
      if (first_wrong.empty()) first_wrong = f.name;
    }
  }
  const bool covered = coverage.size() == 4 && exceptions > 0 && excluded > 0;
  return {fixtures.size() == 20 && wrong == 0 && covered,
          Fmt("%zu fixtures, %d mismatched%s%s; labels: matched %d, contained-ambiguous %d, "
              "overlapping-ambiguous %d, unmatched %d, icon exceptions %d, fullscreen "
              "exclusions %d",
              fixtures.size(), wrong, first_wrong.empty() ? "" : " (first: ",
              first_wrong.empty() ? "" : (first_wrong + ")").c_str(),
              coverage[GapCategory::kMatched], coverage[GapCategory::kContainedAmbiguous],
              coverage[GapCategory::kOverlappingAmbiguous], coverage[GapCategory::kUnmatched],
              exceptions, excluded)};
}

// ---------------------------------------------------------------------------
// AC10 / AC11: determinism and throughput.

GenSpec NoisySpec(std::uint64_t seed, int screens) {
  GenSpec spec;
  spec.seed = seed;
  spec.num_screens = screens;
  spec.low_contrast_fraction = 0.1;
  spec.noise.jitter_sigma = 0.02;
  spec.noise.confidence_sigma = 0.2;
  spec.noise.spurious_rate = 0.5;
  spec.noise.drop_probability = {{UIType::kText, 0.05}};
  spec.noise.duplicate_probability = {{UIType::kIcon, 0.2}, {UIType::kPicture, 0.2}};
  spec.noise.confusion = {{UIType::kIcon, UIType::kPicture, 0.05}};
  return spec;
}

struct PipelineDump {
  std::string trees;
  std::string diagnostics;
  int screens = 0;
  int stages = 0;
  int unbalanced = 0;
};

PipelineDump RunPipeline(const GenSpec& spec, int jobs) {
  const Corpus corpus = GenerateCorpus(spec, jobs);
  std::vector<Screen> screens;
  OcrByScreen ocr;
  for (const auto& s : corpus.screens) {
    screens.push_back(s.noisy);
    ocr[s.noisy.screen_id] = s.ocr;
  }
  const auto outcomes = ProcessScreens(screens, ocr, {}, jobs);
  PipelineDump dump;
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& o : outcomes) {
    trees.push_back(ToJson(o.tree));
    ++dump.screens;
    for (const auto& stage : o.stages) {
      ++dump.stages;
      dump.unbalanced += !stage.Balanced();
    }
  }
  dump.trees = DumpJson(trees);
  dump.diagnostics = DumpJson(DiagnosticsJson(outcomes));
  return dump;
}

Outcome Determinism() {
  const GenSpec spec = NoisySpec(1010, 200);
  const PipelineDump a = RunPipeline(spec, 1);
  const PipelineDump b = RunPipeline(spec, 1);
  const PipelineDump c = RunPipeline(spec, 3);
  const bool identical = a.trees == b.trees && a.diagnostics == b.diagnostics &&
                         a.trees == c.trees && a.diagnostics == c.diagnostics;
  return {identical && a.unbalanced == 0 && b.unbalanced == 0 && c.unbalanced == 0,
          Fmt("%d screens run three times (1, 1, 3 jobs): outputs %s (%zu + %zu bytes); "
              "unbalanced stage counts %d of %d",
              a.screens, identical ? "byte-identical" : "DIFFER", a.trees.size(),
              a.diagnostics.size(), a.unbalanced + b.unbalanced + c.unbalanced,
              a.stages + b.stages + c.stages)};
}

Outcome Throughput() {
  const Corpus corpus = GenerateCorpus(NoisySpec(1111, 500));
  std::vector<Screen> screens;
  OcrByScreen ocr;
  for (const auto& s : corpus.screens) {
    screens.push_back(s.noisy);
    screens.back().raster = s.truth.raster;  // decoded in memory
    ocr[s.noisy.screen_id] = s.ocr;
  }
  const auto start = Clock::now();
  const auto outcomes = ProcessScreens(screens, ocr, {}, 1);
  const double seconds = SecondsSince(start);
  int errors = 0;
  for (const auto& o : outcomes) errors += o.error.has_value();
  const double rate = outcomes.size() / std::max(seconds, 1e-9);
  return {errors == 0 && rate >= 100.0,
          Fmt("%zu screens with in-memory rasters in %.3f s single-threaded: %.0f screens/s "
              "(need >= 100)",
              outcomes.size(), seconds, rate)};
}

}  // namespace
}  // namespace uisem

int main() {
  using namespace uisem;
  int failures = 0;
  auto report = [&](const char* id, const char* name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %s %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
  };
  report("AC1", "AP oracle equivalence", ApOracleEquivalence);
  report("AC2", "insertion-distance oracle", InsertionDistanceOracle);
  report("AC3", "XY-cut oracle", XyCutOracle);
  report("AC4", "NMS/dedup invariants", SuppressionInvariants);
  CorpusRun run;
  std::string corpus_error;
  try {
    run = RunZeroJitterCorpus();
  } catch (const std::exception& e) {
    corpus_error = e.what();
  }
  auto with_corpus = [&](Outcome (*fn)(const CorpusRun&)) {
    return [&, fn] {
      if (!corpus_error.empty()) return Outcome{false, "exception: " + corpus_error};
      return fn(run);
    };
  };
  report("AC5", "grouping recovery", with_corpus(GroupingRecovery));
  report("AC6", "ordering quality", with_corpus(OrderingQuality));
  report("AC7", "selection state", SelectionState);
  report("AC8", "clickability calibration", ClickabilityCalibration);
  report("AC9", "gap analysis fixtures", GapFixtures);
  report("AC10", "determinism", Determinism);
  report("AC11", "throughput", Throughput);
  std::printf("%d of 11 criteria passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}
