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

#include "uisem/clickability.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "uisem/errors.h"

namespace uisem {
namespace {

using nlohmann::json;

constexpr int kNumGeometricFeatures = 4;

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Dense row-major feature matrix.
struct Dataset {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> x;
  std::vector<double> y;

  double at(size_t r, size_t c) const { return x[r * cols + c]; }
  std::span<const double> row(size_t r) const {
    return {x.data() + r * cols, cols};
  }
};

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& data, std::span<const double> grad,
              std::span<const double> hess, const GbtParams& params)
      : data_(data), grad_(grad), hess_(hess), params_(params) {}

  RegressionTree Build() {
    std::vector<size_t> all(data_.rows);
    std::iota(all.begin(), all.end(), 0);
    tree_.nodes.clear();
    Grow(all, 0);
    return std::move(tree_);
  }

 private:
  struct Split {
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
  };

  double LeafValue(const std::vector<size_t>& idx) const {
    double g = 0.0;
    double h = 0.0;
    for (size_t i : idx) {
      g += grad_[i];
      h += hess_[i];
    }
    return g / (h + params_.l2);
  }

  Split BestSplit(const std::vector<size_t>& idx) const {
    Split best;
    const size_t n = idx.size();
    const size_t min_leaf = static_cast<size_t>(std::max(1, params_.min_samples_leaf));
    if (n < 2 * min_leaf) return best;
    double total = 0.0;
    for (size_t i : idx) total += grad_[i];
    const double base = total * total / static_cast<double>(n);
    std::vector<size_t> sorted = idx;
    for (size_t f = 0; f < data_.cols; ++f) {
      std::sort(sorted.begin(), sorted.end(), [&](size_t a, size_t b) {
        const double va = data_.at(a, f);
        const double vb = data_.at(b, f);
        return va < vb || (va == vb && a < b);
      });
      double left_sum = 0.0;
      for (size_t k = 0; k + 1 < n; ++k) {
        left_sum += grad_[sorted[k]];
        const double v = data_.at(sorted[k], f);
        const double next = data_.at(sorted[k + 1], f);
        if (v == next) continue;
        const size_t nl = k + 1;
        const size_t nr = n - nl;
        if (nl < min_leaf || nr < min_leaf) continue;
        const double right_sum = total - left_sum;
        const double gain = left_sum * left_sum / static_cast<double>(nl) +
                            right_sum * right_sum / static_cast<double>(nr) -
                            base;
        if (gain > best.gain + 1e-12) {
          best = {static_cast<int>(f), 0.5 * (v + next), gain};
        }
      }
    }
    return best;
  }

  int Grow(const std::vector<size_t>& idx, int depth) {
    const int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.push_back({});
    Split split;
    if (depth < params_.max_depth) split = BestSplit(idx);
    if (split.feature < 0) {
      tree_.nodes[id].value = LeafValue(idx);
      return id;
    }
    std::vector<size_t> left;
    std::vector<size_t> right;
    for (size_t i : idx) {
      (data_.at(i, split.feature) < split.threshold ? left : right).push_back(i);
    }
    tree_.nodes[id].feature = split.feature;
    tree_.nodes[id].threshold = split.threshold;
    const int l = Grow(left, depth + 1);
    const int r = Grow(right, depth + 1);
    tree_.nodes[id].left = l;
    tree_.nodes[id].right = r;
    return id;
  }

  const Dataset& data_;
  std::span<const double> grad_;
  std::span<const double> hess_;
  const GbtParams& params_;
  RegressionTree tree_;
};

Dataset Encode(const ClickabilityModel& model, std::span<const LabeledIcon> items) {
  Dataset d;
  d.rows = items.size();
  d.cols = kNumGeometricFeatures + model.vocabulary.size();
  d.x.reserve(d.rows * d.cols);
  for (const auto& item : items) {
    auto row = model.Encode(item.features);
    d.x.insert(d.x.end(), row.begin(), row.end());
    d.y.push_back(item.clickable ? 1.0 : 0.0);
  }
  return d;
}

void RequireBothClasses(std::span<const LabeledIcon> items, const char* which) {
  bool pos = false;
  bool neg = false;
  for (const auto& item : items) (item.clickable ? pos : neg) = true;
  if (!pos || !neg) {
    throw std::invalid_argument(std::string(which) +
                                " set must contain both clickable and "
                                "non-clickable icons");
  }
}

}  // namespace

IconFeatures FeaturesOf(const DetectedElement& icon) {
  return {icon.box.center_x(), icon.box.center_y(), icon.box.width(),
          icon.box.height(),
          icon.icon_class.value_or(std::string(kUnknownIcon))};
}

double RegressionTree::Evaluate(std::span<const double> x) const {
  int i = 0;
  while (nodes[i].feature >= 0) {
    i = x[nodes[i].feature] < nodes[i].threshold ? nodes[i].left : nodes[i].right;
  }
  return nodes[i].value;
}

std::vector<double> ClickabilityModel::Encode(const IconFeatures& f) const {
  std::vector<double> row = {f.center_x, f.center_y, f.width, f.height};
  row.resize(kNumGeometricFeatures + vocabulary.size(), 0.0);
  auto it = std::lower_bound(vocabulary.begin(), vocabulary.end(), f.icon_class);
  if (it != vocabulary.end() && *it == f.icon_class) {
    row[kNumGeometricFeatures + (it - vocabulary.begin())] = 1.0;
  }
  return row;
}

double ClickabilityModel::Score(const IconFeatures& f) const {
  const auto row = Encode(f);
  double margin = base_score;
  for (const auto& tree : trees) margin += learning_rate * tree.Evaluate(row);
  return Sigmoid(margin);
}

Calibration CalibrateThreshold(std::span<const double> scores,
                               const std::vector<bool>& labels,
                               double target_precision) {
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("scores and labels differ in length");
  }
  const long positives = std::count(labels.begin(), labels.end(), true);
  if (positives == 0) {
    throw std::invalid_argument("calibration needs at least one positive");
  }
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return scores[a] > scores[b]; });

  std::optional<Calibration> smallest_meeting;
  Calibration best_precision;
  bool have_best = false;
  long tp = 0;
  long fp = 0;
  for (size_t k = 0; k < order.size(); ++k) {
    (labels[order[k]] ? tp : fp) += 1;
    // Evaluate only at the end of a run of tied scores.
    if (k + 1 < order.size() && scores[order[k + 1]] == scores[order[k]]) continue;
    const Calibration point{
        .threshold = scores[order[k]],
        .precision = static_cast<double>(tp) / static_cast<double>(tp + fp),
        .recall = static_cast<double>(tp) / static_cast<double>(positives),
    };
    if (point.precision >= target_precision) {
      smallest_meeting = point;
    }
    // Later points have smaller thresholds; >= keeps the smallest on ties.
    if (!have_best || point.precision >= best_precision.precision) {
      best_precision = point;
      have_best = true;
    }
  }
  if (smallest_meeting) {
    smallest_meeting->target_met = true;
    return *smallest_meeting;
  }
  return best_precision;
}

TrainingReport TrainClickability(std::span<const LabeledIcon> train,
                                 std::span<const LabeledIcon> validation,
                                 double target_precision,
                                 const GbtParams& params) {
  RequireBothClasses(train, "training");
  RequireBothClasses(validation, "validation");

  TrainingReport report;
  ClickabilityModel& model = report.model;
  std::set<std::string> vocab;
  for (const auto& item : train) vocab.insert(item.features.icon_class);
  vocab.erase(std::string(kUnknownIcon));
  model.vocabulary.assign(vocab.begin(), vocab.end());
  model.learning_rate = params.learning_rate;

  const Dataset data = Encode(model, train);
  const double positives = std::accumulate(data.y.begin(), data.y.end(), 0.0);
  const double base_rate = positives / static_cast<double>(data.rows);
  model.base_score = std::log(base_rate / (1.0 - base_rate));

  std::vector<double> margin(data.rows, model.base_score);
  std::vector<double> grad(data.rows);
  std::vector<double> hess(data.rows);
  for (int t = 0; t < params.num_trees; ++t) {
    for (size_t i = 0; i < data.rows; ++i) {
      const double p = Sigmoid(margin[i]);
      grad[i] = data.y[i] - p;
      hess[i] = p * (1.0 - p);
    }
    RegressionTree tree = TreeBuilder(data, grad, hess, params).Build();
    for (size_t i = 0; i < data.rows; ++i) {
      margin[i] += params.learning_rate * tree.Evaluate(data.row(i));
    }
    model.trees.push_back(std::move(tree));
  }

  std::vector<double> scores;
  std::vector<bool> labels;
  for (const auto& item : validation) {
    scores.push_back(model.Score(item.features));
    labels.push_back(item.clickable);
  }
  report.calibration = CalibrateThreshold(scores, labels, target_precision);
  model.threshold = report.calibration.threshold;
  if (!report.calibration.target_met) {
    report.warnings.push_back(
        "target precision unachievable on the validation set; threshold set "
        "at the maximum-precision point");
  }
  return report;
}

std::pair<std::vector<LabeledIcon>, std::vector<LabeledIcon>> SplitTrainValidation(
    std::span<const LabeledIcon> items, double validation_fraction,
    std::uint64_t seed) {
  std::vector<size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  // Fisher-Yates with an explicit draw keeps the split identical across
  // standard library implementations.
  for (size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng() % i]);
  }
  const size_t n_val = static_cast<size_t>(
      std::lround(validation_fraction * static_cast<double>(items.size())));
  std::pair<std::vector<LabeledIcon>, std::vector<LabeledIcon>> out;
  for (size_t k = 0; k < order.size(); ++k) {
    (k < n_val ? out.second : out.first).push_back(items[order[k]]);
  }
  return out;
}

std::optional<bool> ScoreClickability(const ClickabilityModel* model,
                                      const DetectedElement& element) {
  switch (element.type) {
    case UIType::kIcon:
      if (model == nullptr) return std::nullopt;
      return model->Predict(FeaturesOf(element));
    case UIType::kTextField:
    case UIType::kSlider:
    case UIType::kPageControl:
    case UIType::kCheckboxSelected:
    case UIType::kCheckboxUnselected:
    case UIType::kToggleSelected:
    case UIType::kToggleUnselected:
    case UIType::kSegmentedControl:
      return true;
    default:
      return std::nullopt;
  }
}

json ToJson(const ClickabilityModel& model) {
  json trees = json::array();
  for (const auto& tree : model.trees) {
    json nodes = json::array();
    for (const auto& n : tree.nodes) {
      nodes.push_back(json{{"feature", n.feature},
                           {"threshold", n.threshold},
                           {"left", n.left},
                           {"right", n.right},
                           {"value", n.value}});
    }
    trees.push_back(json{{"nodes", std::move(nodes)}});
  }
  return json{{"format", "uisem-clickability-gbt/1"},
              {"features", json::array({"center_x", "center_y", "width", "height"})},
              {"vocabulary", model.vocabulary},
              {"base_score", model.base_score},
              {"learning_rate", model.learning_rate},
              {"threshold", model.threshold},
              {"trees", std::move(trees)}};
}

ClickabilityModel ClickabilityModelFromJson(const json& j) {
  try {
    ClickabilityModel model;
    model.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
    if (!std::is_sorted(model.vocabulary.begin(), model.vocabulary.end())) {
      throw SchemaError("clickability model: vocabulary must be sorted");
    }
    model.base_score = j.at("base_score").get<double>();
    model.learning_rate = j.at("learning_rate").get<double>();
    model.threshold = j.at("threshold").get<double>();
    const int cols = kNumGeometricFeatures + static_cast<int>(model.vocabulary.size());
    for (const auto& t : j.at("trees")) {
      RegressionTree tree;
      for (const auto& n : t.at("nodes")) {
        tree.nodes.push_back({n.at("feature").get<int>(), n.at("threshold").get<double>(),
                              n.at("left").get<int>(), n.at("right").get<int>(),
                              n.at("value").get<double>()});
      }
      const int size = static_cast<int>(tree.nodes.size());
      if (size == 0) throw SchemaError("clickability model: empty tree");
      for (int i = 0; i < size; ++i) {
        const auto& n = tree.nodes[i];
        // Children must point forward, which rules out cycles.
        if (n.feature >= cols ||
            (n.feature >= 0 && (n.left <= i || n.right <= i || n.left >= size ||
                                n.right >= size))) {
          throw SchemaError("clickability model: malformed tree node");
        }
      }
      model.trees.push_back(std::move(tree));
    }
    return model;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("clickability model: ") + e.what());
  }
}

}  // namespace uisem
