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

#ifndef UISEM_CLICKABILITY_H_
#define UISEM_CLICKABILITY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "uisem/model.h"

namespace uisem {

// Location, size and recognized class of an icon.
struct IconFeatures {
  double center_x = 0;
  double center_y = 0;
  double width = 0;
  double height = 0;
  std::string icon_class{kUnknownIcon};
};

IconFeatures FeaturesOf(const DetectedElement& icon);

struct LabeledIcon {
  IconFeatures features;
  bool clickable = false;
};

// Binary regression tree stored as a flat node array; node 0 is the root.
struct RegressionTree {
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;   // taken when x[feature] < threshold
    int right = -1;
    double value = 0.0;
  };
  std::vector<Node> nodes;

  double Evaluate(std::span<const double> x) const;
};

struct GbtParams {
  int num_trees = 50;
  int max_depth = 3;
  double learning_rate = 0.1;
  int min_samples_leaf = 5;
  double l2 = 1.0;
};

// Gradient-boosted regression trees on the logistic loss plus a decision
// threshold on the predicted probability.
struct ClickabilityModel {
  // One-hot columns; a class outside the vocabulary sets no column.
  std::vector<std::string> vocabulary;
  double base_score = 0.0;  // log-odds
  double learning_rate = 0.1;
  std::vector<RegressionTree> trees;
  double threshold = 0.5;

  std::vector<double> Encode(const IconFeatures& f) const;
  // Probability of being clickable, in (0, 1).
  double Score(const IconFeatures& f) const;
  bool Predict(const IconFeatures& f) const { return Score(f) >= threshold; }
};

struct Calibration {
  double threshold = 1.0;
  double precision = 0.0;
  double recall = 0.0;
  bool target_met = false;
};

// Scans thresholds over the distinct validation scores (positive iff
// score >= threshold) and returns the smallest one reaching the target
// precision. When none does, returns the highest-precision threshold with
// target_met == false. Requires at least one positive label.
Calibration CalibrateThreshold(std::span<const double> scores,
                               const std::vector<bool>& labels,
                               double target_precision);

struct TrainingReport {
  ClickabilityModel model;
  Calibration calibration;
  std::vector<std::string> warnings;
};

// Fits on `train`, calibrates on `validation`. Throws std::invalid_argument
// when either set lacks one of the two classes.
TrainingReport TrainClickability(std::span<const LabeledIcon> train,
                                 std::span<const LabeledIcon> validation,
                                 double target_precision,
                                 const GbtParams& params = {});

// Deterministic shuffled split; `validation_fraction` of the items go to the
// second set.
std::pair<std::vector<LabeledIcon>, std::vector<LabeledIcon>> SplitTrainValidation(
    std::span<const LabeledIcon> items, double validation_fraction,
    std::uint64_t seed);

// Icons are clickable iff the model is confident. Intrinsically interactive
// types are clickable; Text, Picture and the rest stay unset. Without a model
// icons stay unset.
std::optional<bool> ScoreClickability(const ClickabilityModel* model,
                                      const DetectedElement& element);

nlohmann::json ToJson(const ClickabilityModel& model);
ClickabilityModel ClickabilityModelFromJson(const nlohmann::json& j);

}  // namespace uisem

#endif  // UISEM_CLICKABILITY_H_
