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

#ifndef UISEM_SYNTHGEN_H_
#define UISEM_SYNTHGEN_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "uisem/clickability.h"
#include "uisem/config.h"
#include "uisem/json_io.h"
#include "uisem/model.h"
#include "uisem/raster.h"

namespace uisem {

// Synthetic screens with known structure, used as the oracle for pipeline
// tests and evaluations. Everything is a pure function of the spec and its
// seed.

enum class Template {
  kTabBar,
  kList,
  kArticle,
  kPictureGrid,
  kSegmented,
};

inline constexpr int kNumTemplates = 5;

std::string_view ToString(Template t);
std::optional<Template> ParseTemplate(std::string_view name);

struct CountRange {
  int min = 1;
  int max = 1;

  bool operator==(const CountRange&) const = default;
};

struct ClassConfusion {
  UIType from = UIType::kOther;
  UIType to = UIType::kOther;
  double probability = 0.0;

  bool operator==(const ClassConfusion&) const = default;
};

// Detector noise applied to the truth screens. All zero means the noisy
// screens equal the truth screens.
struct NoiseSpec {
  // Standard deviation of each box edge, as a fraction of the box size.
  double jitter_sigma = 0.0;
  std::map<UIType, double> drop_probability;
  std::map<UIType, double> duplicate_probability;
  // Drawn independently for each detection, duplicates included.
  std::vector<ClassConfusion> confusion;
  // Confidence is 1 - |N(0, sigma)|.
  double confidence_sigma = 0.0;
  // Expected number of spurious detections per screen (Poisson).
  double spurious_rate = 0.0;

  bool operator==(const NoiseSpec&) const = default;
};

struct GenSpec {
  std::uint64_t seed = 1;
  int num_screens = 100;
  int width_px = 360;
  int height_px = 720;
  // Relative template weights, indexed by Template.
  std::map<Template, double> template_mix = {
      {Template::kTabBar, 1.0},      {Template::kList, 1.0},
      {Template::kArticle, 1.0},     {Template::kPictureGrid, 1.0},
      {Template::kSegmented, 1.0},
  };
  // Content rows (list rows, paragraphs, grid rows) per screen; rows that
  // do not fit are dropped, so `max` is an upper bound.
  CountRange items{3, 6};
  CountRange tabs{3, 5};
  CountRange segments{3, 4};
  // Screens whose selection tint differs from its peers by less than one
  // quantization step.
  double low_contrast_fraction = 0.0;
  // Segmented-control rows marking the selection with an underline bar
  // instead of a tinted label.
  double bar_style_fraction = 0.5;
  bool render = true;
  NoiseSpec noise;

  bool operator==(const GenSpec&) const = default;

  // Human-readable problems; empty when valid.
  std::vector<std::string> Validate() const;
};

class InfeasibleSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

nlohmann::json ToJson(const GenSpec& spec);
// Fields absent from `j` keep their defaults. Throws SchemaError.
GenSpec GenSpecFromJson(const nlohmann::json& j);

// Ground-truth state of one element.
struct TruthLabel {
  std::optional<bool> selected;
  std::optional<bool> clickable;

  bool operator==(const TruthLabel&) const = default;
};

enum class SelectionStyle {
  kNone,
  kTint,       // the selected control's glyphs use the tint color
  kBottomBar,  // the selected segment carries an underline bar
};

struct Palette {
  Rgb background;
  Rgb glyph;    // unselected icon glyphs and text
  Rgb tint;     // selected tab / segment
  Rgb surface;  // cards, tab bar, segments
  Rgb picture;
  Rgb control;  // checkboxes, toggles, sliders, fields

  bool operator==(const Palette&) const = default;
};

struct SyntheticScreen {
  Template layout = Template::kList;
  Screen truth;  // confidence 1, text and icon classes filled
  std::map<std::string, TruthLabel> labels;
  AccessibilityTree truth_tree;
  std::vector<std::string> truth_order;
  // Groups of two or more elements planted by the generator, by kind.
  std::map<NodeKind, int> planted_groups;
  Screen noisy;
  std::vector<OcrText> ocr;
  Palette palette;
  SelectionStyle selection_style = SelectionStyle::kNone;
  bool low_contrast = false;
  // Quantized distance between tint and glyph (0 when below one step).
  double tint_contrast = 0.0;
  // Selected tab or segment index, if the screen has one.
  std::optional<int> selected_index;
};

struct Corpus {
  GenSpec spec;
  std::vector<SyntheticScreen> screens;
};

// Throws std::invalid_argument for an invalid spec and InfeasibleSpecError
// when the requested counts cannot fit on a screen.
void CheckFeasible(const GenSpec& spec);

// Screen `index` of the corpus; independent of the other screens.
SyntheticScreen GenerateScreen(const GenSpec& spec, int index);

// Screens are generated on up to `jobs` threads from per-screen seeds, so
// the result does not depend on `jobs`.
Corpus GenerateCorpus(const GenSpec& spec, int jobs = 1);

// Flat-color rendering of the truth screen.
Raster RenderRaster(const SyntheticScreen& screen, int width_px, int height_px);

// Ground-truth rule of the synthetic icon set: navigation and action icon
// classes are clickable anywhere; other icons only in the top bar or the
// bottom tab zone.
bool PlantedClickable(const IconFeatures& icon);

// `n` icons with random placement and classes, labeled by PlantedClickable
// with a fraction `label_noise` of labels flipped.
std::vector<LabeledIcon> GenerateIconSet(int n, std::uint64_t seed,
                                         double label_noise = 0.02);

// Labeled icons of a corpus (truth icons with their clickable labels).
std::vector<LabeledIcon> CorpusIcons(const Corpus& corpus);

// Writes truth.json, noisy.json, ocr.json, truth_trees.json, labels.json,
// truth_order.json, manifest.json and, when rendering, rasters/<id>.png.
void WriteCorpus(const Corpus& corpus, const std::filesystem::path& dir);

// Deterministic 64-bit mix used to derive per-item seeds.
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t index);

}  // namespace uisem

#endif  // UISEM_SYNTHGEN_H_
