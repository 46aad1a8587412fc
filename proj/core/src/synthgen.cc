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

#include "uisem/synthgen.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "uisem/errors.h"
#include "uisem/grouping.h"
#include "uisem/pipeline.h"
#include "uisem/tint.h"

namespace uisem {
namespace {

using nlohmann::json;

// Layout constants, in normalized screen coordinates.
constexpr double kTextH = 0.025;
constexpr double kTitleH = 0.032;
constexpr double kContentTop = 0.10;
constexpr double kContentTopBare = 0.04;
// Content stays above this line, which keeps every content top well clear
// of the bottom tab zone.
constexpr double kContentBottom = 0.80;
constexpr double kTabBarTop = 0.88;
constexpr double kTabIconTop = 0.90;
constexpr double kTabIconBottom = 0.935;
constexpr double kTabLabelTop = 0.945;
constexpr double kTabLabelBottom = 0.97;
constexpr double kSegmentH = 0.05;
constexpr double kCardH = 0.08;
constexpr double kRowH = 0.04;
constexpr double kMaxRowGap = 0.03;
constexpr double kMaxGridRowGap = 0.06;
constexpr double kMaxPictureH = 0.14;
constexpr double kMaxParagraphGap = 0.045;
constexpr int kMaxParagraphLines = 3;
constexpr int kMaxTabs = 6;
constexpr int kMaxSegments = 8;
// Underline bar height as a fraction of the segment.
constexpr double kBarFraction = 0.15;

const std::vector<std::string>& IconVocabulary() {
  static const std::vector<std::string> kVocab = {
      "back", "close", "menu", "search", "share", "add",
      "settings", "heart", "star", "info", "chevron", std::string(kUnknownIcon)};
  return kVocab;
}

bool IsActionIcon(const std::string& icon_class) {
  static const std::vector<std::string> kActions = {"back",  "close", "menu",
                                                    "search", "share", "add"};
  return std::find(kActions.begin(), kActions.end(), icon_class) != kActions.end();
}

const std::vector<std::string>& Words() {
  static const std::vector<std::string> kWords = {
      "Home",    "Search", "Profile", "Settings", "Messages", "Photos",
      "Music",   "Library", "Account", "Privacy", "Alerts",  "Storage",
      "Display", "Sound",  "Recent",  "Shared",  "Today",   "Weather",
      "News",    "Travel", "Notes",   "Friends", "Maps",    "Wallet"};
  return kWords;
}

constexpr std::array<std::string_view, kNumTemplates> kTemplateNames = {
    "tab_bar", "list", "article", "picture_grid", "segmented"};

// Bin centers for 5-bit quantization (8k + 4) keep rendered colors away
// from quantization boundaries.
constexpr Rgb kLightBackground{252, 252, 252};
constexpr Rgb kLightGlyph{92, 92, 92};
constexpr Rgb kLightSurface{236, 236, 236};
constexpr Rgb kDarkBackground{28, 28, 28};
constexpr Rgb kDarkGlyph{196, 196, 196};
constexpr Rgb kDarkSurface{60, 60, 60};
constexpr std::array<Rgb, 5> kTints = {
    Rgb{4, 124, 252}, Rgb{252, 148, 4}, Rgb{228, 36, 60}, Rgb{36, 172, 76},
    Rgb{148, 68, 228}};
constexpr std::array<Rgb, 4> kPictures = {
    Rgb{100, 140, 180}, Rgb{180, 132, 84}, Rgb{116, 164, 108}, Rgb{156, 100, 140}};
constexpr std::array<Rgb, 3> kControls = {
    Rgb{52, 124, 220}, Rgb{76, 180, 92}, Rgb{140, 140, 140}};

Rgb Shift(Rgb c, int dr, int dg, int db) {
  auto clamp = [](int v) { return static_cast<std::uint8_t>(std::clamp(v, 0, 255)); };
  return {clamp(c.r + dr), clamp(c.g + dg), clamp(c.b + db)};
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double Uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int Int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool Chance(double p) { return p > 0.0 && Uniform(0.0, 1.0) < p; }
  double Normal(double sigma) {
    return sigma > 0.0 ? std::normal_distribution<double>(0.0, sigma)(engine_) : 0.0;
  }
  int Poisson(double mean) {
    return mean > 0.0 ? std::poisson_distribution<int>(mean)(engine_) : 0;
  }
  template <typename T>
  const T& Pick(const std::vector<T>& items) {
    return items[static_cast<size_t>(Int(0, static_cast<int>(items.size()) - 1))];
  }
  template <typename T, size_t N>
  const T& Pick(const std::array<T, N>& items) {
    return items[static_cast<size_t>(Int(0, static_cast<int>(N) - 1))];
  }
  // Index drawn with probability proportional to `weights`.
  size_t Weighted(const std::vector<double>& weights) {
    return std::discrete_distribution<size_t>(weights.begin(), weights.end())(engine_);
  }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Worst-case height of one content item, used for feasibility.
double WorstItemHeight(Template t) {
  switch (t) {
    case Template::kTabBar:
    case Template::kList:
    case Template::kSegmented:
      return kCardH + kMaxRowGap;
    case Template::kArticle:
      return kMaxParagraphLines * kTextH + (kMaxParagraphLines - 1) * 0.9 * kTextH +
             kMaxParagraphGap;
    case Template::kPictureGrid:
      // Two items per row at worst when a row holds three cells; one row per
      // item is the conservative bound.
      return kMaxPictureH + 0.015 + 2 * kTextH + 0.027 + kMaxGridRowGap;
  }
  return 1.0;
}

double AvailableHeight(Template t) {
  double top = kContentTop;
  if (t == Template::kArticle) top += kTitleH + kMaxParagraphGap;
  if (t == Template::kSegmented) top += kSegmentH + 0.04;
  return kContentBottom - top;
}

// Builds one screen: elements, labels and truth nodes in reading order.
class ScreenBuilder {
 public:
  ScreenBuilder(Rng& rng, SyntheticScreen& out) : rng_(rng), out_(out) {}

  DetectedElement Add(UIType type, double l, double t, double r, double b) {
    DetectedElement e{.id = "e" + std::to_string(next_id_++),
                      .box = BBox(l, t, r, b),
                      .type = type};
    TruthLabel label;
    switch (type) {
      case UIType::kText:
        e.text = RandomText(1, 3);
        break;
      case UIType::kIcon:
        e.icon_class = rng_.Pick(IconVocabulary());
        label.clickable = PlantedClickable(FeaturesOf(e));
        break;
      case UIType::kCheckboxSelected:
      case UIType::kToggleSelected:
        label.selected = true;
        label.clickable = true;
        break;
      case UIType::kCheckboxUnselected:
      case UIType::kToggleUnselected:
        label.selected = false;
        label.clickable = true;
        break;
      case UIType::kTextField:
      case UIType::kSlider:
      case UIType::kPageControl:
      case UIType::kSegmentedControl:
        label.clickable = true;
        break;
      default:
        break;
    }
    out_.labels[e.id] = label;
    out_.truth.elements.push_back(e);
    return e;
  }

  DetectedElement AddIcon(double l, double t, double r, double b,
                          const std::string& icon_class) {
    DetectedElement e = Add(UIType::kIcon, l, t, r, b);
    auto& stored = out_.truth.elements.back();
    stored.icon_class = icon_class;
    out_.labels[e.id].clickable = PlantedClickable(FeaturesOf(stored));
    return stored;
  }

  std::string RandomText(int min_words, int max_words) {
    const int n = rng_.Int(min_words, max_words);
    std::string s;
    for (int i = 0; i < n; ++i) {
      if (i > 0) s += ' ';
      s += rng_.Pick(Words());
    }
    return s;
  }

  void Emit(AccessibilityNode node) { nodes_.push_back(std::move(node)); }

  AccessibilityNode Group(NodeKind kind, std::vector<AccessibilityNode> children,
                          std::optional<DetectedElement> anchor = std::nullopt) {
    AccessibilityNode g{.kind = kind, .box = children.front().box};
    size_t count = children.size() + (anchor ? 1 : 0);
    for (const auto& c : children) {
      if (c.is_group()) count += ElementIds(c).size() - 1;
    }
    if (count >= 2) ++out_.planted_groups[kind];
    g.element = std::move(anchor);
    g.children = std::move(children);
    return g;
  }

  // Returns the y after the top bar (or the bare content top).
  double TopBar() {
    if (!rng_.Chance(0.7)) return kContentTopBare;
    Emit(AccessibilityNode::Leaf(AddIcon(0.04, 0.025, 0.10, 0.065, "back")));
    const double w = rng_.Uniform(0.2, 0.4);
    Emit(AccessibilityNode::Leaf(Add(UIType::kText, 0.5 - w / 2, 0.03, 0.5 + w / 2, 0.062)));
    Emit(AccessibilityNode::Leaf(AddIcon(0.90, 0.025, 0.96, 0.065,
                                         rng_.Pick(IconVocabulary()))));
    return kContentTop;
  }

  // Text lines stacked from `top`; returns the leaves.
  std::vector<AccessibilityNode> Lines(double left, double top, int count, double gap,
                                       double min_w, double max_w) {
    std::vector<AccessibilityNode> lines;
    double y = top;
    for (int i = 0; i < count; ++i) {
      const double w = rng_.Uniform(min_w, max_w);
      lines.push_back(AccessibilityNode::Leaf(Add(UIType::kText, left, y, left + w, y + kTextH)));
      y += kTextH + gap;
    }
    return lines;
  }

  // A gap inside a text block: strictly below the smaller line height,
  // sometimes just below it.
  double LineGap() {
    return rng_.Chance(0.2) ? 0.9 * kTextH : rng_.Uniform(0.005, 0.01);
  }

  AccessibilityNode TextNode(std::vector<AccessibilityNode> lines) {
    if (lines.size() == 1) return std::move(lines.front());
    return Group(NodeKind::kTextBlock, std::move(lines));
  }

  // List rows from `y` while they fit; returns the y after the last row.
  double ListRows(double y, int count, double bottom) {
    for (int i = 0; i < count; ++i) {
      const double kind = rng_.Uniform(0.0, 1.0);
      const double h = kind < 0.45 ? kCardH : kRowH + (kind >= 0.95 ? 0.01 : 0.0);
      if (y + h > bottom) break;
      const double yc = y + h / 2;
      if (kind < 0.45) {
        Card(y);
      } else if (kind < 0.60) {
        const UIType box = rng_.Chance(0.5) ? UIType::kCheckboxSelected
                                            : UIType::kCheckboxUnselected;
        Emit(AccessibilityNode::Leaf(Add(box, 0.06, yc - 0.0125, 0.11, yc + 0.0125)));
        Emit(AccessibilityNode::Leaf(Add(UIType::kText, 0.14, yc - kTextH / 2,
                                         0.14 + rng_.Uniform(0.3, 0.6), yc + kTextH / 2)));
      } else if (kind < 0.75) {
        Emit(AccessibilityNode::Leaf(Add(UIType::kText, 0.06, yc - kTextH / 2,
                                         0.06 + rng_.Uniform(0.3, 0.55), yc + kTextH / 2)));
        const UIType toggle = rng_.Chance(0.5) ? UIType::kToggleSelected
                                               : UIType::kToggleUnselected;
        Emit(AccessibilityNode::Leaf(Add(toggle, 0.80, yc - 0.015, 0.94, yc + 0.015)));
      } else if (kind < 0.85) {
        Emit(AccessibilityNode::Leaf(AddIcon(0.06, yc - 0.018, 0.12, yc + 0.018,
                                             rng_.Pick(IconVocabulary()))));
        Emit(AccessibilityNode::Leaf(Add(UIType::kText, 0.16, yc - kTextH / 2,
                                         0.16 + rng_.Uniform(0.3, 0.6), yc + kTextH / 2)));
      } else if (kind < 0.90) {
        Emit(AccessibilityNode::Leaf(Add(UIType::kText, 0.06, yc - kTextH / 2,
                                         0.06 + rng_.Uniform(0.3, 0.8), yc + kTextH / 2)));
      } else if (kind < 0.95) {
        Emit(AccessibilityNode::Leaf(Add(UIType::kSlider, 0.08, yc - 0.008, 0.92, yc + 0.008)));
      } else {
        Emit(AccessibilityNode::Leaf(Add(UIType::kTextField, 0.06, yc - 0.022, 0.94, yc + 0.022)));
      }
      y += h + rng_.Uniform(0.02, kMaxRowGap);
    }
    return y;
  }

  // A container card: icon, one or two text lines, optional chevron.
  void Card(double y) {
    const double yc = y + kCardH / 2;
    DetectedElement card = Add(UIType::kContainer, 0.04, y, 0.96, y + kCardH);
    std::vector<AccessibilityNode> children;
    children.push_back(AccessibilityNode::Leaf(
        AddIcon(0.07, yc - 0.02, 0.13, yc + 0.02, rng_.Pick(IconVocabulary()))));
    if (rng_.Chance(0.6)) {
      const double gap = LineGap();
      const double top = yc - (2 * kTextH + gap) / 2;
      children.push_back(TextNode(Lines(0.17, top, 2, gap, 0.25, 0.6)));
    } else {
      children.push_back(TextNode(Lines(0.17, yc - kTextH / 2, 1, 0.0, 0.25, 0.6)));
    }
    if (rng_.Chance(0.3)) {
      children.push_back(AccessibilityNode::Leaf(
          AddIcon(0.88, yc - 0.015, 0.92, yc + 0.015, "chevron")));
    }
    Emit(Group(NodeKind::kContainer, std::move(children), card));
  }

  void Article(int paragraphs) {
    double y = TopBar();
    const double tw = rng_.Uniform(0.5, 0.85);
    Emit(AccessibilityNode::Leaf(Add(UIType::kText, 0.06, y, 0.06 + tw, y + kTitleH)));
    y += kTitleH + ParagraphGap();
    for (int p = 0; p < paragraphs; ++p) {
      const int lines = rng_.Int(1, kMaxParagraphLines);
      const double gap = LineGap();
      const double h = lines * kTextH + (lines - 1) * gap;
      if (y + h > kContentBottom) break;
      auto leaves = Lines(0.06, y, lines, gap, 0.6, 0.88);
      Emit(TextNode(std::move(leaves)));
      y += h + ParagraphGap();
      if (rng_.Chance(0.3)) y = ArticlePicture(y);
    }
  }

  // Gap between paragraphs: never below the line height, sometimes just
  // above it.
  double ParagraphGap() {
    return rng_.Chance(0.2) ? 1.1 * kTextH : rng_.Uniform(0.03, kMaxParagraphGap);
  }

  double ArticlePicture(double y) {
    const double ph = rng_.Uniform(0.12, 0.18);
    const double caption_room = 0.035 + kTextH + 0.05;
    if (y + ph + caption_room > kContentBottom) return y;
    const double sub_gap = SubtitleGap();
    DetectedElement pic = Add(UIType::kPicture, 0.15, y, 0.85, y + ph);
    double bottom = y + ph;
    const double u = rng_.Uniform(0.0, 1.0);
    if (u < 0.2) {
      Emit(AccessibilityNode::Leaf(pic));
    } else {
      const bool grouped = u < 0.9;
      const double gap = grouped ? sub_gap : 1.1 * SubtitleLimit();
      auto caption = Lines(0.2, bottom + gap, 1, 0.0, 0.3, 0.6);
      bottom += gap + kTextH;
      if (grouped) {
        std::vector<AccessibilityNode> members{AccessibilityNode::Leaf(pic)};
        members.push_back(std::move(caption.front()));
        Emit(Group(NodeKind::kPictureWithSubtitle, std::move(members)));
      } else {
        Emit(AccessibilityNode::Leaf(pic));
        Emit(std::move(caption.front()));
      }
    }
    return bottom + rng_.Uniform(0.04, 0.05);
  }

  double SubtitleLimit() const { return config_.subtitle_y_gap; }

  // Gap under a picture that still attaches a subtitle.
  double SubtitleGap() {
    return rng_.Chance(0.2) ? 0.9 * SubtitleLimit() : rng_.Uniform(0.006, 0.015);
  }

  void PictureGrid(int pictures) {
    double y = TopBar();
    const int cols = rng_.Int(2, 3);
    const double cell_w = (0.92 - (cols - 1) * 0.04) / cols;
    int placed = 0;
    while (placed < pictures) {
      const double ph = rng_.Uniform(0.10, kMaxPictureH);
      if (y + ph + 0.015 + 2 * kTextH + 0.027 > kContentBottom) break;
      const int in_row = std::min(cols, pictures - placed);
      // Variants: 0 none, 1 one line, 2 two-line block, 3 second line at the
      // subtitle limit, 4 caption just beyond the limit.
      std::vector<int> variant(in_row);
      bool any_grouped = false;
      for (int c = 0; c < in_row; ++c) {
        const double u = rng_.Uniform(0.0, 1.0);
        variant[c] = u < 0.1 ? 0 : u < 0.6 ? 1 : u < 0.8 ? 2 : u < 0.92 ? 3 : 4;
        any_grouped |= variant[c] >= 1 && variant[c] <= 3;
      }
      // At least one grouped cell keeps the row a single reading band.
      if (!any_grouped) variant[0] = 1;
      // A caption beyond the limit must overlap a taller grouped cell;
      // otherwise it would form its own reading band below the row.
      if (std::find(variant.begin(), variant.end(), 4) != variant.end()) {
        for (int& v : variant) {
          if (v >= 1 && v <= 3) {
            v = 3;
            break;
          }
        }
      }
      double row_bottom = y + ph;
      for (int c = 0; c < in_row; ++c) {
        const double x = 0.04 + c * (cell_w + 0.04);
        DetectedElement pic = Add(UIType::kPicture, x, y, x + cell_w, y + ph);
        const double lw_max = cell_w * 0.95;
        double bottom = y + ph;
        switch (variant[c]) {
          case 0:
            Emit(AccessibilityNode::Leaf(pic));
            break;
          case 1:
          case 2: {
            const int lines = variant[c] == 1 ? 1 : 2;
            const double gap = SubtitleGap();
            const double line_gap = rng_.Uniform(0.005, 0.01);
            auto leaves = Lines(x, bottom + gap, lines, line_gap, cell_w * 0.5, lw_max);
            bottom += gap + lines * kTextH + (lines - 1) * line_gap;
            std::vector<AccessibilityNode> members{AccessibilityNode::Leaf(pic)};
            for (auto& l : leaves) members.push_back(std::move(l));
            Emit(Group(NodeKind::kPictureWithSubtitle, std::move(members)));
            break;
          }
          case 3: {
            // The second line sits at least a line height below the first
            // (no text block) but within the subtitle limit.
            const double gap = rng_.Uniform(0.006, 0.012);
            auto first = Lines(x, bottom + gap, 1, 0.0, cell_w * 0.5, lw_max);
            const double second_gap = 0.9 * SubtitleLimit();
            auto second = Lines(x, bottom + gap + kTextH + second_gap, 1, 0.0,
                                cell_w * 0.5, lw_max);
            bottom += gap + 2 * kTextH + second_gap;
            std::vector<AccessibilityNode> members{AccessibilityNode::Leaf(pic)};
            members.push_back(std::move(first.front()));
            members.push_back(std::move(second.front()));
            Emit(Group(NodeKind::kPictureWithSubtitle, std::move(members)));
            break;
          }
          default: {
            const double gap = 1.1 * SubtitleLimit();
            auto caption = Lines(x, bottom + gap, 1, 0.0, cell_w * 0.5, lw_max);
            bottom += gap + kTextH;
            Emit(AccessibilityNode::Leaf(pic));
            Emit(std::move(caption.front()));
            break;
          }
        }
        row_bottom = std::max(row_bottom, bottom);
      }
      placed += in_row;
      y = row_bottom + rng_.Uniform(0.045, kMaxGridRowGap);
    }
    if (rng_.Chance(0.3) && y + 0.015 <= kContentBottom) {
      Emit(AccessibilityNode::Leaf(Add(UIType::kPageControl, 0.42, y, 0.58, y + 0.015)));
    }
  }

  void TabBar(int rows, int tabs, int selected) {
    const double y = TopBar();
    ListRows(y, rows, kContentBottom);
    const double tw = 0.92 / tabs;
    const double icon_top =
        rng_.Chance(0.2) ? kTabLabelBottom - 0.9 * config_.tab_height_tolerance
                         : kTabIconTop;
    for (int i = 0; i < tabs; ++i) {
      const double cx = 0.04 + tw * (i + 0.5);
      std::vector<AccessibilityNode> members;
      members.push_back(AccessibilityNode::Leaf(
          AddIcon(cx - 0.03, icon_top, cx + 0.03, kTabIconBottom, rng_.Pick(IconVocabulary()))));
      if (rng_.Chance(0.85)) {
        const double lw = rng_.Uniform(0.06, std::min(0.14, tw - 0.03));
        DetectedElement label =
            Add(UIType::kText, cx - lw / 2, kTabLabelTop, cx + lw / 2, kTabLabelBottom);
        auto& stored = out_.truth.elements.back();
        stored.text = rng_.Pick(Words());
        label.text = stored.text;
        members.push_back(AccessibilityNode::Leaf(label));
      }
      AccessibilityNode tab = Group(NodeKind::kTabButton, std::move(members));
      tab.selected = i == selected;
      Emit(std::move(tab));
    }
  }

  void Segmented(int rows, int segments, int selected) {
    double y = TopBar();
    const double w = 0.88 / segments;
    for (int i = 0; i < segments; ++i) {
      DetectedElement seg = Add(UIType::kSegmentedControl, 0.06 + i * w, y,
                                0.06 + (i + 1) * w, y + kSegmentH);
      out_.labels[seg.id].selected = i == selected;
      Emit(AccessibilityNode::Leaf(seg));
    }
    y += kSegmentH + rng_.Uniform(0.03, 0.04);
    ListRows(y, rows, kContentBottom);
  }

  std::vector<AccessibilityNode> TakeNodes() { return std::move(nodes_); }

 private:
  HeuristicConfig config_;
  Rng& rng_;
  SyntheticScreen& out_;
  int next_id_ = 0;
  std::vector<AccessibilityNode> nodes_;
};

Palette MakePalette(Rng& rng) {
  const bool dark = rng.Chance(0.25);
  Palette p;
  p.background = dark ? kDarkBackground : kLightBackground;
  p.glyph = dark ? kDarkGlyph : kLightGlyph;
  p.surface = dark ? kDarkSurface : kLightSurface;
  p.tint = rng.Pick(kTints);
  p.picture = rng.Pick(kPictures);
  p.control = rng.Pick(kControls);
  return p;
}

void ApplyNoise(const NoiseSpec& noise, Rng& rng, SyntheticScreen& s) {
  s.noisy = s.truth;
  s.noisy.elements.clear();
  auto prob = [](const std::map<UIType, double>& m, UIType t) {
    auto it = m.find(t);
    return it == m.end() ? 0.0 : it->second;
  };
  auto jitter = [&](const BBox& box, double sigma) {
    if (sigma <= 0.0) return box;
    const double dl = rng.Normal(sigma * box.width());
    const double dr = rng.Normal(sigma * box.width());
    const double dt = rng.Normal(sigma * box.height());
    const double db = rng.Normal(sigma * box.height());
    auto moved = BBox::TryMake(std::clamp(box.left() + dl, 0.0, 1.0),
                               std::clamp(box.top() + dt, 0.0, 1.0),
                               std::clamp(box.right() + dr, 0.0, 1.0),
                               std::clamp(box.bottom() + db, 0.0, 1.0));
    return moved ? *moved : box;
  };
  // Each detection of a truth element draws its class independently, so a
  // duplicate may carry a different class than the first detection.
  auto confuse = [&](const DetectedElement& truth) {
    DetectedElement e = truth;
    double u = rng.Uniform(0.0, 1.0);
    for (const auto& c : noise.confusion) {
      if (c.from != truth.type) continue;
      if (u < c.probability) {
        e.type = c.to;
        break;
      }
      u -= c.probability;
    }
    if (e.type != UIType::kIcon) e.icon_class.reset();
    if (e.type != UIType::kText) e.text.reset();
    return e;
  };
  for (const DetectedElement& truth : s.truth.elements) {
    if (rng.Chance(prob(noise.drop_probability, truth.type))) continue;
    DetectedElement e = confuse(truth);
    e.box = jitter(e.box, noise.jitter_sigma);
    e.confidence = std::clamp(1.0 - std::abs(rng.Normal(noise.confidence_sigma)), 0.01, 1.0);
    s.noisy.elements.push_back(e);
    if (rng.Chance(prob(noise.duplicate_probability, truth.type))) {
      DetectedElement dup = confuse(truth);
      dup.id = e.id + "-dup";
      dup.box = jitter(e.box, std::max(noise.jitter_sigma, 0.02));
      dup.confidence = e.confidence * rng.Uniform(0.5, 0.95);
      s.noisy.elements.push_back(dup);
    }
  }
  const int spurious = rng.Poisson(noise.spurious_rate);
  for (int k = 0; k < spurious; ++k) {
    const UIType type = DetectorClasses()[static_cast<size_t>(rng.Int(0, kNumDetectorClasses - 1))];
    const double w = rng.Uniform(0.03, 0.3);
    const double h = rng.Uniform(0.02, 0.1);
    const double l = rng.Uniform(0.0, 1.0 - w);
    const double t = rng.Uniform(0.0, 1.0 - h);
    s.noisy.elements.push_back({.id = "fp-" + std::to_string(k),
                                .box = BBox(l, t, l + w, t + h),
                                .type = type,
                                .confidence = rng.Uniform(0.05, 0.6)});
  }
}

void RequireProbability(double p, const std::string& what, std::vector<std::string>& out) {
  if (!(p >= 0.0 && p <= 1.0)) out.push_back(what + " must be in [0, 1]");
}

template <typename T>
T Get(const json& j, const char* key, const T& fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw SchemaError(std::string("gen spec: field '") + key + "' has the wrong type");
  }
}

UIType TypeOrThrow(const std::string& name) {
  auto t = ParseUIType(name);
  if (!t) throw SchemaError("gen spec: unknown type '" + name + "'");
  return *t;
}

CountRange RangeFromJson(const json& j, const char* key, CountRange fallback) {
  if (!j.contains(key)) return fallback;
  const json& r = j.at(key);
  if (!r.is_object()) throw SchemaError(std::string("gen spec: '") + key + "' must be an object");
  return {Get(r, "min", fallback.min), Get(r, "max", fallback.max)};
}

std::map<UIType, double> TypeMapFromJson(const json& j, const char* key) {
  std::map<UIType, double> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_object()) {
    throw SchemaError(std::string("gen spec: '") + key + "' must be an object");
  }
  for (const auto& [name, value] : j.at(key).items()) {
    if (!value.is_number()) throw SchemaError("gen spec: probability for '" + name + "' must be a number");
    out[TypeOrThrow(name)] = value.get<double>();
  }
  return out;
}

json TypeMapJson(const std::map<UIType, double>& m) {
  json out = json::object();
  for (const auto& [t, p] : m) out[std::string(ToString(t))] = p;
  return out;
}

}  // namespace

std::string_view ToString(Template t) { return kTemplateNames[static_cast<size_t>(t)]; }

std::optional<Template> ParseTemplate(std::string_view name) {
  for (size_t i = 0; i < kTemplateNames.size(); ++i) {
    if (kTemplateNames[i] == name) return static_cast<Template>(i);
  }
  return std::nullopt;
}

std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the combined input.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<std::string> GenSpec::Validate() const {
  std::vector<std::string> out;
  if (num_screens < 0) out.push_back("num_screens must be non-negative");
  if (width_px < 16 || width_px > 8192 || height_px < 16 || height_px > 8192) {
    out.push_back("raster size must be within [16, 8192] pixels");
  }
  double total = 0.0;
  for (const auto& [t, w] : template_mix) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      out.push_back("template weight for " + std::string(ToString(t)) + " must be >= 0");
    }
    total += w;
  }
  if (!(total > 0.0)) out.push_back("template weights must not all be zero");
  for (const auto& [name, r] : {std::pair{"items", items}, std::pair{"tabs", tabs},
                                std::pair{"segments", segments}}) {
    if (r.min < 1 || r.min > r.max) {
      out.push_back(std::string(name) + " range must satisfy 1 <= min <= max");
    }
  }
  RequireProbability(low_contrast_fraction, "low_contrast_fraction", out);
  RequireProbability(bar_style_fraction, "bar_style_fraction", out);
  if (!(noise.jitter_sigma >= 0.0 && noise.jitter_sigma <= 0.5)) {
    out.push_back("jitter_sigma must be in [0, 0.5]");
  }
  if (!(noise.confidence_sigma >= 0.0 && noise.confidence_sigma <= 1.0)) {
    out.push_back("confidence_sigma must be in [0, 1]");
  }
  if (!(noise.spurious_rate >= 0.0 && noise.spurious_rate <= 100.0)) {
    out.push_back("spurious_rate must be in [0, 100]");
  }
  for (const auto& [t, p] : noise.drop_probability) {
    RequireProbability(p, "drop probability of " + std::string(ToString(t)), out);
  }
  for (const auto& [t, p] : noise.duplicate_probability) {
    RequireProbability(p, "duplicate probability of " + std::string(ToString(t)), out);
  }
  std::map<UIType, double> confusion_total;
  for (const auto& c : noise.confusion) {
    RequireProbability(c.probability, "confusion probability", out);
    if (!IsDetectorClass(c.from) || !IsDetectorClass(c.to)) {
      out.push_back("confusion entries must name detector classes");
    }
    confusion_total[c.from] += c.probability;
  }
  for (const auto& [t, p] : confusion_total) {
    if (p > 1.0 + 1e-12) {
      out.push_back("confusion probabilities from " + std::string(ToString(t)) +
                    " sum above 1");
    }
  }
  return out;
}

void CheckFeasible(const GenSpec& spec) {
  const auto problems = spec.Validate();
  if (!problems.empty()) {
    std::string msg = "invalid gen spec:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw std::invalid_argument(msg);
  }
  const auto weight = [&](Template t) {
    auto it = spec.template_mix.find(t);
    return it == spec.template_mix.end() ? 0.0 : it->second;
  };
  for (int i = 0; i < kNumTemplates; ++i) {
    const auto t = static_cast<Template>(i);
    if (weight(t) <= 0.0) continue;
    double needed = spec.items.min * WorstItemHeight(t);
    if (t == Template::kPictureGrid) {
      // Two or more columns: pictures share rows.
      needed = std::ceil(spec.items.min / 2.0) * WorstItemHeight(t);
    }
    if (needed > AvailableHeight(t)) {
      throw InfeasibleSpecError("items.min = " + std::to_string(spec.items.min) +
                                " does not fit a " + std::string(ToString(t)) +
                                " screen");
    }
  }
  if (weight(Template::kTabBar) > 0.0 && spec.tabs.max > kMaxTabs) {
    throw InfeasibleSpecError("at most " + std::to_string(kMaxTabs) +
                              " tabs fit across a screen");
  }
  if (weight(Template::kSegmented) > 0.0 && spec.segments.max > kMaxSegments) {
    throw InfeasibleSpecError("at most " + std::to_string(kMaxSegments) +
                              " segments fit across a screen");
  }
}

SyntheticScreen GenerateScreen(const GenSpec& spec, int index) {
  Rng rng(MixSeed(spec.seed, static_cast<std::uint64_t>(index)));
  SyntheticScreen s;
  char id[32];
  std::snprintf(id, sizeof id, "synth-%05d", index);
  s.truth.screen_id = id;
  s.truth.width_px = spec.width_px;
  s.truth.height_px = spec.height_px;

  std::vector<Template> templates;
  std::vector<double> weights;
  for (const auto& [t, w] : spec.template_mix) {
    templates.push_back(t);
    weights.push_back(w);
  }
  s.layout = templates[rng.Weighted(weights)];
  s.palette = MakePalette(rng);
  s.low_contrast = rng.Chance(spec.low_contrast_fraction);

  const int items = rng.Int(spec.items.min, spec.items.max);
  ScreenBuilder builder(rng, s);
  switch (s.layout) {
    case Template::kTabBar: {
      const int tabs = rng.Int(spec.tabs.min, spec.tabs.max);
      s.selected_index = rng.Int(0, tabs - 1);
      s.selection_style = SelectionStyle::kTint;
      builder.TabBar(items, tabs, *s.selected_index);
      break;
    }
    case Template::kList:
      builder.ListRows(builder.TopBar(), items, kContentBottom);
      break;
    case Template::kArticle:
      builder.Article(items);
      break;
    case Template::kPictureGrid:
      builder.PictureGrid(items);
      break;
    case Template::kSegmented: {
      const int segments = rng.Int(spec.segments.min, spec.segments.max);
      s.selected_index = rng.Int(0, segments - 1);
      s.selection_style = rng.Chance(spec.bar_style_fraction) ? SelectionStyle::kBottomBar
                                                              : SelectionStyle::kTint;
      builder.Segmented(items, segments, *s.selected_index);
      break;
    }
  }

  // Selection contrast: the marked color against what it must stand out from.
  if (s.selection_style != SelectionStyle::kNone) {
    const Rgb base = s.selection_style == SelectionStyle::kBottomBar ? s.palette.surface
                                                                     : s.palette.glyph;
    if (s.low_contrast) {
      s.palette.tint = Shift(base, 2, 2, 2);
    } else if (rng.Chance(0.15)) {
      // Just over one quantization step.
      s.palette.tint = Shift(base, 8, 8, 0);
    }
    s.tint_contrast = ColorDistance(Quantize(s.palette.tint, 5), Quantize(base, 5));
  }

  s.truth_tree.screen_id = s.truth.screen_id;
  s.truth_tree.nodes = builder.TakeNodes();
  FinalizeGroups(s.truth_tree.nodes);
  s.truth_order = ElementIds(s.truth_tree);

  std::shuffle(s.truth.elements.begin(), s.truth.elements.end(), rng.engine());
  for (const auto& e : s.truth.elements) {
    if (e.type == UIType::kText && e.text) s.ocr.push_back({e.box, *e.text});
  }

  if (spec.render) {
    s.truth.raster_path = "rasters/" + s.truth.screen_id + ".png";
    s.truth.raster = std::make_shared<const Raster>(
        RenderRaster(s, spec.width_px, spec.height_px));
  }
  Rng noise_rng(MixSeed(spec.seed ^ 0x6E6F697365ULL, static_cast<std::uint64_t>(index)));
  ApplyNoise(spec.noise, noise_rng, s);
  return s;
}

Corpus GenerateCorpus(const GenSpec& spec, int jobs) {
  CheckFeasible(spec);
  Corpus corpus{.spec = spec};
  corpus.screens.resize(static_cast<size_t>(spec.num_screens));
  ParallelFor(corpus.screens.size(), jobs, [&](size_t i) {
    corpus.screens[i] = GenerateScreen(spec, static_cast<int>(i));
  });
  return corpus;
}

Raster RenderRaster(const SyntheticScreen& s, int width_px, int height_px) {
  const Palette& p = s.palette;
  Raster raster(width_px, height_px, p.background);
  if (s.layout == Template::kTabBar) raster.FillBox(BBox(0.0, kTabBarTop, 1.0, 1.0), p.surface);

  // Elements of the selected tab draw their glyphs in the tint color.
  std::vector<std::string> tinted;
  for (const auto& node : s.truth_tree.nodes) {
    if (node.kind == NodeKind::kTabButton && node.selected == true) {
      for (auto& id : ElementIds(node)) tinted.push_back(id);
    }
  }
  auto is_tinted = [&](const std::string& id) {
    return std::find(tinted.begin(), tinted.end(), id) != tinted.end();
  };
  auto inner = [](const BBox& b, double fx0, double fy0, double fx1, double fy1) {
    return BBox(b.left() + fx0 * b.width(), b.top() + fy0 * b.height(),
                b.left() + fx1 * b.width(), b.top() + fy1 * b.height());
  };

  // Large surfaces first, glyphs on top.
  for (const auto& e : s.truth.elements) {
    switch (e.type) {
      case UIType::kContainer:
      case UIType::kDialog:
        raster.FillBox(e.box, p.surface);
        break;
      case UIType::kPicture:
        raster.FillBox(e.box, p.picture);
        break;
      default:
        break;
    }
  }
  for (const auto& e : s.truth.elements) {
    const Rgb glyph = is_tinted(e.id) ? p.tint : p.glyph;
    switch (e.type) {
      case UIType::kIcon:
        raster.FillBox(inner(e.box, 0.25, 0.25, 0.75, 0.75), glyph);
        break;
      case UIType::kText:
        raster.FillBox(inner(e.box, 0.0, 0.3, 0.85, 0.7), glyph);
        break;
      case UIType::kSegmentedControl: {
        raster.FillBox(e.box, p.surface);
        const auto it = s.labels.find(e.id);
        const bool selected = it != s.labels.end() && it->second.selected == true;
        const bool tint_label = selected && s.selection_style == SelectionStyle::kTint;
        raster.FillBox(inner(e.box, 0.2, 0.3, 0.8, 0.7), tint_label ? p.tint : p.glyph);
        if (selected && s.selection_style == SelectionStyle::kBottomBar) {
          raster.FillBox(inner(e.box, 0.0, 1.0 - kBarFraction, 1.0, 1.0), p.tint);
        }
        break;
      }
      case UIType::kCheckboxSelected:
      case UIType::kToggleSelected:
        raster.FillBox(e.box, p.control);
        break;
      case UIType::kCheckboxUnselected:
      case UIType::kToggleUnselected:
      case UIType::kSlider:
      case UIType::kPageControl:
        raster.FillBox(e.box, p.glyph);
        break;
      case UIType::kTextField:
        raster.FillBox(e.box, p.surface);
        break;
      default:
        break;
    }
  }
  return raster;
}

bool PlantedClickable(const IconFeatures& icon) {
  return IsActionIcon(icon.icon_class) || icon.center_y < 0.1 || icon.center_y > 0.88;
}

std::vector<LabeledIcon> GenerateIconSet(int n, std::uint64_t seed, double label_noise) {
  Rng rng(MixSeed(seed, 0x1C0));
  std::vector<LabeledIcon> out;
  out.reserve(static_cast<size_t>(std::max(0, n)));
  for (int i = 0; i < n; ++i) {
    IconFeatures f;
    f.center_x = rng.Uniform(0.03, 0.97);
    f.center_y = rng.Uniform(0.02, 0.98);
    f.width = rng.Uniform(0.04, 0.12);
    f.height = rng.Uniform(0.02, 0.06);
    f.icon_class = rng.Pick(IconVocabulary());
    bool label = PlantedClickable(f);
    // Always drawn, so the features do not depend on the noise level.
    if (rng.Uniform(0.0, 1.0) < label_noise) label = !label;
    out.push_back({std::move(f), label});
  }
  return out;
}

std::vector<LabeledIcon> CorpusIcons(const Corpus& corpus) {
  std::vector<LabeledIcon> out;
  for (const auto& s : corpus.screens) {
    for (const auto& e : s.truth.elements) {
      if (e.type != UIType::kIcon) continue;
      out.push_back({FeaturesOf(e), s.labels.at(e.id).clickable.value_or(false)});
    }
  }
  return out;
}

json ToJson(const GenSpec& spec) {
  json mix = json::object();
  for (const auto& [t, w] : spec.template_mix) mix[std::string(ToString(t))] = w;
  json confusion = json::array();
  for (const auto& c : spec.noise.confusion) {
    confusion.push_back({{"from", std::string(ToString(c.from))},
                         {"to", std::string(ToString(c.to))},
                         {"probability", c.probability}});
  }
  auto range = [](const CountRange& r) { return json{{"min", r.min}, {"max", r.max}}; };
  return {{"seed", spec.seed},
          {"num_screens", spec.num_screens},
          {"width_px", spec.width_px},
          {"height_px", spec.height_px},
          {"template_mix", std::move(mix)},
          {"items", range(spec.items)},
          {"tabs", range(spec.tabs)},
          {"segments", range(spec.segments)},
          {"low_contrast_fraction", spec.low_contrast_fraction},
          {"bar_style_fraction", spec.bar_style_fraction},
          {"render", spec.render},
          {"noise",
           {{"jitter_sigma", spec.noise.jitter_sigma},
            {"drop_probability", TypeMapJson(spec.noise.drop_probability)},
            {"duplicate_probability", TypeMapJson(spec.noise.duplicate_probability)},
            {"confusion", std::move(confusion)},
            {"confidence_sigma", spec.noise.confidence_sigma},
            {"spurious_rate", spec.noise.spurious_rate}}}};
}

GenSpec GenSpecFromJson(const json& j) {
  if (!j.is_object()) throw SchemaError("gen spec: expected an object");
  static const std::vector<std::string> kKeys = {
      "seed", "num_screens", "width_px", "height_px", "template_mix", "items", "tabs",
      "segments", "low_contrast_fraction", "bar_style_fraction", "render", "noise"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw SchemaError("gen spec: unknown field '" + key + "'");
    }
  }
  GenSpec spec;
  spec.seed = Get(j, "seed", spec.seed);
  spec.num_screens = Get(j, "num_screens", spec.num_screens);
  spec.width_px = Get(j, "width_px", spec.width_px);
  spec.height_px = Get(j, "height_px", spec.height_px);
  if (j.contains("template_mix")) {
    const json& mix = j.at("template_mix");
    if (!mix.is_object()) throw SchemaError("gen spec: 'template_mix' must be an object");
    spec.template_mix.clear();
    for (const auto& [name, w] : mix.items()) {
      auto t = ParseTemplate(name);
      if (!t) throw SchemaError("gen spec: unknown template '" + name + "'");
      if (!w.is_number()) throw SchemaError("gen spec: template weight must be a number");
      spec.template_mix[*t] = w.get<double>();
    }
  }
  spec.items = RangeFromJson(j, "items", spec.items);
  spec.tabs = RangeFromJson(j, "tabs", spec.tabs);
  spec.segments = RangeFromJson(j, "segments", spec.segments);
  spec.low_contrast_fraction = Get(j, "low_contrast_fraction", spec.low_contrast_fraction);
  spec.bar_style_fraction = Get(j, "bar_style_fraction", spec.bar_style_fraction);
  spec.render = Get(j, "render", spec.render);
  if (j.contains("noise")) {
    const json& n = j.at("noise");
    if (!n.is_object()) throw SchemaError("gen spec: 'noise' must be an object");
    spec.noise.jitter_sigma = Get(n, "jitter_sigma", 0.0);
    spec.noise.confidence_sigma = Get(n, "confidence_sigma", 0.0);
    spec.noise.spurious_rate = Get(n, "spurious_rate", 0.0);
    spec.noise.drop_probability = TypeMapFromJson(n, "drop_probability");
    spec.noise.duplicate_probability = TypeMapFromJson(n, "duplicate_probability");
    if (n.contains("confusion")) {
      if (!n.at("confusion").is_array()) {
        throw SchemaError("gen spec: 'confusion' must be an array");
      }
      for (const json& c : n.at("confusion")) {
        spec.noise.confusion.push_back(
            {TypeOrThrow(Get<std::string>(c, "from", "")),
             TypeOrThrow(Get<std::string>(c, "to", "")), Get(c, "probability", 0.0)});
      }
    }
  }
  return spec;
}

void WriteCorpus(const Corpus& corpus, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  if (corpus.spec.render) {
    std::filesystem::create_directories(dir / "rasters", ec);
    if (ec) throw IoError("cannot create " + (dir / "rasters").string());
  }

  std::vector<Screen> truth;
  std::vector<Screen> noisy;
  std::vector<AccessibilityTree> trees;
  OcrByScreen ocr;
  json labels = json::object();
  json orders = json::object();
  json entries = json::array();
  for (const auto& s : corpus.screens) {
    truth.push_back(s.truth);
    noisy.push_back(s.noisy);
    trees.push_back(s.truth_tree);
    ocr[s.truth.screen_id] = s.ocr;
    json screen_labels = json::object();
    for (const auto& [id, label] : s.labels) {
      json l = json::object();
      if (label.selected) l["selected"] = *label.selected;
      if (label.clickable) l["clickable"] = *label.clickable;
      screen_labels[id] = std::move(l);
    }
    labels[s.truth.screen_id] = std::move(screen_labels);
    orders[s.truth.screen_id] = s.truth_order;
    json entry{{"screen_id", s.truth.screen_id},
               {"template", std::string(ToString(s.layout))},
               {"low_contrast", s.low_contrast},
               {"tint_contrast", s.tint_contrast}};
    entry["selected_index"] = s.selected_index ? json(*s.selected_index) : json(nullptr);
    if (s.truth.raster_path) entry["raster"] = *s.truth.raster_path;
    entries.push_back(std::move(entry));
    if (corpus.spec.render && s.truth.raster) {
      WritePng(*s.truth.raster, dir / *s.truth.raster_path);
    }
  }
  json trees_json = json::array();
  for (const auto& t : trees) trees_json.push_back(ToJson(t));

  WriteJsonFile(dir / "truth.json", ToJson(truth));
  WriteJsonFile(dir / "noisy.json", ToJson(noisy));
  WriteJsonFile(dir / "ocr.json", ToJson(ocr));
  WriteJsonFile(dir / "truth_trees.json", trees_json);
  WriteJsonFile(dir / "labels.json", labels);
  WriteJsonFile(dir / "truth_order.json", orders);
  WriteJsonFile(dir / "manifest.json",
                {{"spec", ToJson(corpus.spec)},
                 {"truth", "truth.json"},
                 {"noisy", "noisy.json"},
                 {"ocr", "ocr.json"},
                 {"truth_trees", "truth_trees.json"},
                 {"labels", "labels.json"},
                 {"truth_order", "truth_order.json"},
                 {"screens", std::move(entries)}});
}

}  // namespace uisem
