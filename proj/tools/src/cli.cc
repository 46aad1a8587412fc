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

#include "uisem_cli/cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "uisem/clickability.h"
#include "uisem/config.h"
#include "uisem/errors.h"
#include "uisem/evaluation.h"
#include "uisem/gap_analysis.h"
#include "uisem/json_io.h"
#include "uisem/pipeline.h"
#include "uisem/synthgen.h"
#include "uisem/validate.h"

namespace uisem::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Common {
  std::string config_path;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  std::string out_dir;
  std::string format = "json";
};

void AddCommon(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "JSON file overriding HeuristicConfig fields")
      ;
  cmd->add_option("--set", c.sets,
                  "Override one config field, e.g. --set subtitle_y_gap=0.025 or "
                  "--set per_class_conf_threshold.Icon=0.3 (applied after --config)");
  cmd->add_option("--seed", c.seed, "Random seed");
  cmd->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::Range(1, 1024));
  cmd->add_option("--out-dir", c.out_dir, "Write result files here instead of stdout");
  cmd->add_option("--format", c.format, "Summary format")
      ->check(CLI::IsMember({"json", "csv"}));
}

// Parses "a.b=value" into {"a": {"b": value}}; values that are not JSON are
// taken as strings.
json SetOverlay(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw SchemaError("--set expects key=value, got '" + assignment + "'");
  }
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  std::vector<std::string> keys;
  std::stringstream ss(path);
  for (std::string k; std::getline(ss, k, '.');) keys.push_back(k);
  for (auto it = keys.rbegin(); it != keys.rend(); ++it) value = json{{*it, value}};
  return value;
}

HeuristicConfig LoadConfig(const Common& c) {
  HeuristicConfig config;
  if (!c.config_path.empty()) config = ApplyConfigOverlay(config, ReadJsonFile(c.config_path));
  for (const auto& s : c.sets) config = ApplyConfigOverlay(config, SetOverlay(s));
  const auto problems = config.Validate();
  if (!problems.empty()) {
    std::string msg = "invalid config:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw SchemaError(msg);
  }
  return config;
}

void WriteText(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  f << content;
  if (!f) throw IoError("failed writing " + path.string());
}

// Result documents go to --out-dir files, or the primary one to stdout.
class Sink {
 public:
  Sink(const Common& common, std::ostream& out) : dir_(common.out_dir), out_(out) {
    if (!dir_.empty()) {
      std::error_code ec;
      fs::create_directories(dir_, ec);
      if (ec) throw IoError("cannot create " + dir_.string() + ": " + ec.message());
    }
  }

  bool to_files() const { return !dir_.empty(); }

  // Written to a file in --out-dir; printed to stdout when `primary` and no
  // directory was given.
  void Put(const std::string& name, const std::string& content, bool primary) {
    if (to_files()) {
      WriteText(dir_ / name, content);
    } else if (primary) {
      out_ << content;
    }
  }

 private:
  fs::path dir_;
  std::ostream& out_;
};

std::vector<Screen> LoadScreens(const std::string& path, bool allow_derived) {
  return ScreensFromJson(ReadJsonFile(path), {.allow_derived_types = allow_derived});
}

// Screens keyed by id; duplicate ids are a schema error.
std::map<std::string, const Screen*> IndexScreens(const std::vector<Screen>& screens,
                                                  const std::string& what) {
  std::map<std::string, const Screen*> out;
  for (const auto& s : screens) {
    if (!out.emplace(s.screen_id, &s).second) {
      throw SchemaError(what + ": duplicate screen id '" + s.screen_id + "'");
    }
  }
  return out;
}

void RequireSameIds(const std::set<std::string>& a, const std::set<std::string>& b,
                    const std::string& what) {
  if (a == b) return;
  std::vector<std::string> diff;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(diff));
  throw IdMismatchError(what + ": screen ids differ (e.g. '" + diff.front() + "')");
}

std::string Csv(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

std::string Num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

std::string OptNum(const std::optional<double>& v) { return v ? Num(*v) : ""; }

// ---------------------------------------------------------------------------
// process

struct ProcessArgs {
  Common common;
  std::string screens;
  std::string rasters;
  std::string ocr;
  std::string model;
};

int Process(const ProcessArgs& a, std::ostream& out, std::ostream& err) {
  PipelineOptions options{.config = LoadConfig(a.common)};
  ClickabilityModel model;
  if (!a.model.empty()) {
    model = ClickabilityModelFromJson(ReadJsonFile(a.model));
    options.clickability = &model;
  }
  const auto records = ScreenRecordsFromJson(ReadJsonFile(a.screens));
  OcrByScreen ocr;
  if (!a.ocr.empty()) ocr = OcrFromJson(ReadJsonFile(a.ocr));
  Sink sink(a.common, out);

  std::vector<ScreenOutcome> outcomes(records.size());
  ParallelFor(records.size(), a.common.jobs, [&](size_t i) {
    ScreenOutcome& o = outcomes[i];
    o.tree.screen_id = records[i].screen_id;
    ValidationResult v = ValidateScreen(records[i]);
    std::vector<std::string> warnings;
    for (const auto& issue : v.warnings()) warnings.push_back(issue.code + ": " + issue.message);
    if (!v.ok()) {
      const Issue first = v.errors().front();
      o.error = first.code + ": " + first.message;
      o.warnings = std::move(warnings);
      return;
    }
    Screen& screen = *v.screen;
    if (!a.rasters.empty() && screen.raster_path) {
      try {
        LoadRaster(screen, a.rasters);
      } catch (const std::exception& e) {
        warnings.push_back(std::string("raster unavailable: ") + e.what());
      }
    }
    std::span<const OcrText> lines;
    if (auto it = ocr.find(screen.screen_id); it != ocr.end()) lines = it->second;
    o = ProcessScreen(screen, lines, options);
    o.warnings.insert(o.warnings.begin(), warnings.begin(), warnings.end());
  });

  json trees = json::array();
  int failed = 0;
  for (const auto& o : outcomes) {
    trees.push_back(ToJson(o.tree));
    if (o.error) {
      ++failed;
      err << "screen '" << o.tree.screen_id << "': " << *o.error << "\n";
    }
  }
  sink.Put("trees.json", DumpJson(trees), true);
  if (a.common.format == "csv") {
    std::vector<std::vector<std::string>> rows = {
        {"screen_id", "stage", "elements_in", "elements_out", "removed", "added", "retyped"}};
    for (const auto& o : outcomes) {
      for (const auto& s : o.stages) {
        rows.push_back({o.tree.screen_id, s.stage, std::to_string(s.elements_in),
                        std::to_string(s.elements_out), std::to_string(s.removed),
                        std::to_string(s.added), std::to_string(s.retyped)});
      }
    }
    sink.Put("diagnostics.csv", Csv(rows), false);
  } else {
    sink.Put("diagnostics.json", DumpJson(DiagnosticsJson(outcomes)), false);
  }
  err << "processed " << outcomes.size() - failed << " of " << outcomes.size()
      << " screens\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
  Common common;
  std::string preds;
  std::string gts;
  std::string pred_trees;
  std::string truth_trees;
};

std::vector<AccessibilityTree> AlignTrees(const std::vector<AccessibilityTree>& produced,
                                          const std::vector<AccessibilityTree>& truth) {
  std::map<std::string, const AccessibilityTree*> by_id;
  for (const auto& t : produced) by_id[t.screen_id] = &t;
  std::set<std::string> a;
  std::set<std::string> b;
  for (const auto& t : produced) a.insert(t.screen_id);
  for (const auto& t : truth) b.insert(t.screen_id);
  RequireSameIds(a, b, "trees");
  std::vector<AccessibilityTree> out;
  for (const auto& t : truth) out.push_back(*by_id.at(t.screen_id));
  return out;
}

int Evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& /*err*/) {
  const HeuristicConfig config = LoadConfig(a.common);
  const auto preds = LoadScreens(a.preds, false);
  const auto gts = LoadScreens(a.gts, true);
  const auto pred_index = IndexScreens(preds, "predictions");
  const auto gt_index = IndexScreens(gts, "ground truth");
  std::set<std::string> pred_ids;
  std::set<std::string> gt_ids;
  for (const auto& [id, s] : pred_index) pred_ids.insert(id);
  for (const auto& [id, s] : gt_index) gt_ids.insert(id);
  RequireSameIds(pred_ids, gt_ids, "predictions vs ground truth");

  std::vector<EvalScreen> screens;
  ConfusionMatrix confusion;
  for (const auto& gt : gts) {
    EvalScreen s{gt.screen_id, pred_index.at(gt.screen_id)->elements, gt.elements};
    confusion.Add(ComputeConfusion(s.preds, s.gts, config.match_iou));
    screens.push_back(std::move(s));
  }
  const ApReport iou = AveragePrecision(
      screens, {.criterion = MatchCriterion::kIouOverHalf, .iou_threshold = config.match_iou});
  const ApReport center = AveragePrecision(
      screens, {.criterion = MatchCriterion::kCenterHit, .iou_threshold = config.match_iou});

  json report{{"screens", screens.size()},
              {"ap_iou_over_half", ToJson(iou)},
              {"ap_center_hit", ToJson(center)},
              {"confusion", ToJson(confusion)}};
  if (!a.pred_trees.empty() && !a.truth_trees.empty()) {
    const auto truth = TreesFromJson(ReadJsonFile(a.truth_trees));
    const auto produced = AlignTrees(TreesFromJson(ReadJsonFile(a.pred_trees)), truth);
    report["grouping"] = ToJson(GroupingMetrics(produced, truth));
    std::vector<std::vector<std::string>> produced_orders;
    std::vector<std::vector<std::string>> truth_orders;
    for (size_t i = 0; i < truth.size(); ++i) {
      produced_orders.push_back(ElementIds(produced[i]));
      truth_orders.push_back(ElementIds(truth[i]));
    }
    report["ordering"] = ToJson(OrderingMetrics(produced_orders, truth_orders));
  }

  Sink sink(a.common, out);
  sink.Put("eval_report.json", DumpJson(report), a.common.format == "json");
  std::vector<std::vector<std::string>> rows = {
      {"type", "num_gt", "num_pred", "ap_iou_over_half", "ap_center_hit"}};
  for (size_t i = 0; i < iou.per_class.size(); ++i) {
    const auto& c = iou.per_class[i];
    rows.push_back({std::string(ToString(c.type)), std::to_string(c.num_gt),
                    std::to_string(c.num_pred), OptNum(c.ap), OptNum(center.per_class[i].ap)});
  }
  rows.push_back({"mean", "", "", OptNum(iou.mean_ap), OptNum(center.mean_ap)});
  rows.push_back({"weighted_mean", "", "", OptNum(iou.weighted_mean_ap),
                  OptNum(center.weighted_mean_ap)});
  if (a.common.format == "csv") sink.Put("ap.csv", Csv(rows), true);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// tune

struct TuneArgs {
  Common common;
  std::string preds;
  std::string gts;
  double beta = 1.0;
};

int Tune(const TuneArgs& a, std::ostream& out, std::ostream& err) {
  const HeuristicConfig config = LoadConfig(a.common);
  const auto preds = LoadScreens(a.preds, false);
  const auto gts = LoadScreens(a.gts, true);
  const auto pred_index = IndexScreens(preds, "predictions");
  const auto gt_index = IndexScreens(gts, "ground truth");
  std::set<std::string> pred_ids;
  std::set<std::string> gt_ids;
  for (const auto& [id, s] : pred_index) pred_ids.insert(id);
  for (const auto& [id, s] : gt_index) gt_ids.insert(id);
  RequireSameIds(pred_ids, gt_ids, "predictions vs ground truth");
  std::vector<EvalScreen> screens;
  for (const auto& gt : gts) {
    screens.push_back({gt.screen_id, pred_index.at(gt.screen_id)->elements, gt.elements});
  }
  const auto choices = TuneThresholds(
      screens, a.beta, {.criterion = MatchCriterion::kIouOverHalf, .iou_threshold = config.match_iou});

  json thresholds = json::object();
  std::vector<std::vector<std::string>> rows = {
      {"type", "threshold", "f_beta", "precision", "recall"}};
  for (const auto& c : choices) {
    thresholds[std::string(ToString(c.type))] = c.threshold;
    rows.push_back({std::string(ToString(c.type)), Num(c.threshold), Num(c.f_beta),
                    Num(c.precision), Num(c.recall)});
    if (c.warning) err << ToString(c.type) << ": " << *c.warning << "\n";
  }
  Sink sink(a.common, out);
  sink.Put("tuned_config.json", DumpJson({{"per_class_conf_threshold", thresholds}}),
           a.common.format == "json");
  if (a.common.format == "csv") sink.Put("thresholds.csv", Csv(rows), true);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// gap

struct GapArgs {
  Common common;
  std::string annotations;
  std::string exposed;
};

int Gap(const GapArgs& a, std::ostream& out, std::ostream& err) {
  const HeuristicConfig config = LoadConfig(a.common);
  const auto annotations = LoadScreens(a.annotations, true);
  IndexScreens(annotations, "annotations");
  const ExposedByScreen exposed = ExposedFromJson(ReadJsonFile(a.exposed));

  std::vector<ScreenGap> gaps(annotations.size());
  ParallelFor(annotations.size(), a.common.jobs, [&](size_t i) {
    const Screen& s = annotations[i];
    std::span<const ExposedElement> list;
    if (auto it = exposed.find(s.screen_id); it != exposed.end()) list = it->second;
    gaps[i] = AnalyzeGaps(s.screen_id, s.elements, list, config);
  });
  for (const auto& s : annotations) {
    if (!exposed.contains(s.screen_id)) {
      err << "screen '" << s.screen_id << "': no exposed elements listed\n";
    }
  }
  const GapSummary summary = SummarizeGaps(gaps);
  json per_screen = json::array();
  for (const auto& g : gaps) per_screen.push_back(ToJson(g));

  Sink sink(a.common, out);
  sink.Put("gap_report.json",
           DumpJson({{"screens", std::move(per_screen)}, {"summary", ToJson(summary)}}),
           a.common.format == "json");
  sink.Put("histogram.csv", HistogramCsv(summary), a.common.format == "csv");
  sink.Put("unmatched_by_type.csv", UnmatchedByTypeCsv(summary), false);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
  Common common;
  std::string spec;
  std::optional<int> num_screens;
  bool no_render = false;
};

int Synth(const SynthArgs& a, std::ostream& out, std::ostream& /*err*/) {
  if (a.common.out_dir.empty()) throw CLI::RequiredError("--out-dir");
  GenSpec spec;
  if (!a.spec.empty()) spec = GenSpecFromJson(ReadJsonFile(a.spec));
  if (a.common.seed) spec.seed = *a.common.seed;
  if (a.num_screens) spec.num_screens = *a.num_screens;
  if (a.no_render) spec.render = false;
  const Corpus corpus = GenerateCorpus(spec, a.common.jobs);
  WriteCorpus(corpus, a.common.out_dir);
  out << DumpJson({{"screens", corpus.screens.size()},
                   {"seed", spec.seed},
                   {"out_dir", a.common.out_dir}});
  return kExitOk;
}

// ---------------------------------------------------------------------------
// train-clickability

struct TrainArgs {
  Common common;
  std::string corpus;
  int icons = 0;
  std::optional<double> target;
  double validation_fraction = 0.2;
  GbtParams params;
};

std::vector<LabeledIcon> CorpusIconsFromDisk(const fs::path& dir) {
  const auto truth = LoadScreens((dir / "truth.json").string(), true);
  const json labels = ReadJsonFile(dir / "labels.json");
  std::vector<LabeledIcon> out;
  for (const auto& s : truth) {
    for (const auto& e : s.elements) {
      if (e.type != UIType::kIcon) continue;
      const json* label = nullptr;
      if (labels.contains(s.screen_id) && labels[s.screen_id].contains(e.id)) {
        label = &labels[s.screen_id][e.id];
      }
      if (label == nullptr || !label->contains("clickable")) continue;
      if (!(*label)["clickable"].is_boolean()) {
        throw SchemaError("labels: clickable of '" + e.id + "' must be a boolean");
      }
      out.push_back({FeaturesOf(e), (*label)["clickable"].get<bool>()});
    }
  }
  return out;
}

int Train(const TrainArgs& a, std::ostream& out, std::ostream& err) {
  const HeuristicConfig config = LoadConfig(a.common);
  const std::uint64_t seed = a.common.seed.value_or(1);
  std::vector<LabeledIcon> icons;
  if (!a.corpus.empty()) {
    icons = CorpusIconsFromDisk(a.corpus);
  } else if (a.icons > 0) {
    icons = GenerateIconSet(a.icons, seed);
  } else {
    throw CLI::ValidationError("train-clickability", "give --corpus DIR or --icons N");
  }
  const auto [train, validation] = SplitTrainValidation(icons, a.validation_fraction, seed);
  const double target = a.target.value_or(config.clickability_target_precision);
  const TrainingReport report = TrainClickability(train, validation, target, a.params);
  for (const auto& w : report.warnings) err << "warning: " << w << "\n";

  const json summary{{"icons", icons.size()},
                     {"train", train.size()},
                     {"validation", validation.size()},
                     {"target_precision", target},
                     {"threshold", report.calibration.threshold},
                     {"precision", report.calibration.precision},
                     {"recall", report.calibration.recall},
                     {"target_met", report.calibration.target_met}};
  Sink sink(a.common, out);
  sink.Put("clickability_model.json", DumpJson(ToJson(report.model)), true);
  sink.Put("training_report.json", DumpJson(summary), false);
  err << "validation precision " << report.calibration.precision << ", recall "
      << report.calibration.recall << " at threshold " << report.calibration.threshold
      << "\n";
  return kExitOk;
}

}  // namespace

int Run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Infers accessibility metadata from UI detections and evaluates it."};
  app.name("uisem");
  app.require_subcommand(1);

  ProcessArgs process;
  auto* p = app.add_subcommand("process", "Refine detections and build accessibility trees");
  AddCommon(p, process.common);
  p->add_option("--screens", process.screens, "Screens file with detections")->required();
  p->add_option("--rasters", process.rasters, "Directory holding screenshot PNGs");
  p->add_option("--ocr", process.ocr, "OCR file");
  p->add_option("--model", process.model, "Clickability model file");

  EvaluateArgs evaluate;
  auto* e = app.add_subcommand("evaluate", "Detection AP, confusion, grouping and ordering");
  AddCommon(e, evaluate.common);
  e->add_option("--preds", evaluate.preds, "Predicted screens")->required();
  e->add_option("--gts", evaluate.gts, "Ground-truth screens")->required();
  e->add_option("--pred-trees", evaluate.pred_trees, "Produced trees");
  e->add_option("--truth-trees", evaluate.truth_trees, "Ground-truth trees");

  TuneArgs tune;
  auto* t = app.add_subcommand("tune", "Per-class confidence thresholds maximizing F-beta");
  AddCommon(t, tune.common);
  t->add_option("--preds", tune.preds, "Predicted screens")->required();
  t->add_option("--gts", tune.gts, "Ground-truth screens")->required();
  t->add_option("--beta", tune.beta, "F-beta weight (>1 favors recall)")
      ->check(CLI::PositiveNumber);

  GapArgs gap;
  auto* g = app.add_subcommand("gap", "Compare annotations with exposed accessibility elements");
  AddCommon(g, gap.common);
  g->add_option("--annotations", gap.annotations, "Annotated screens")->required();
  g->add_option("--exposed", gap.exposed, "Exposed elements file")->required();

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Generate a synthetic corpus");
  AddCommon(s, synth.common);
  s->add_option("--spec", synth.spec, "Generator spec (JSON)");
  s->add_option("--num-screens", synth.num_screens, "Override the screen count")
      ->check(CLI::NonNegativeNumber);
  s->add_flag("--no-render", synth.no_render, "Skip raster rendering");

  TrainArgs train;
  auto* c = app.add_subcommand("train-clickability", "Train and calibrate the icon clickability model");
  AddCommon(c, train.common);
  c->add_option("--corpus", train.corpus, "Corpus directory written by synth");
  c->add_option("--icons", train.icons, "Train on N generated icons instead")
      ->check(CLI::PositiveNumber);
  c->add_option("--target-precision", train.target, "Validation precision target")
      ->check(CLI::Range(0.0, 1.0));
  c->add_option("--validation-fraction", train.validation_fraction)
      ->check(CLI::Range(0.05, 0.95));
  c->add_option("--trees", train.params.num_trees)->check(CLI::Range(1, 10000));
  c->add_option("--depth", train.params.max_depth)->check(CLI::Range(1, 16));
  c->add_option("--learning-rate", train.params.learning_rate)->check(CLI::Range(1e-6, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (p->parsed()) return Process(process, out, err);
    if (e->parsed()) return Evaluate(evaluate, out, err);
    if (t->parsed()) return Tune(tune, out, err);
    if (g->parsed()) return Gap(gap, out, err);
    if (s->parsed()) return Synth(synth, out, err);
    if (c->parsed()) return Train(train, out, err);
  } catch (const CLI::Error& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const SchemaError& ex) {
    err << "schema error: " << ex.what() << "\n";
    return kExitSchema;
  } catch (const InfeasibleSpecError& ex) {
    err << "infeasible spec: " << ex.what() << "\n";
    return kExitSchema;
  } catch (const IoError& ex) {
    err << "i/o error: " << ex.what() << "\n";
    return kExitIo;
  } catch (const IdMismatchError& ex) {
    err << "id mismatch: " << ex.what() << "\n";
    return kExitIdMismatch;
  } catch (const SetMismatchError& ex) {
    err << "id mismatch: " << ex.what() << "\n";
    return kExitIdMismatch;
  } catch (const std::invalid_argument& ex) {
    err << "invalid input: " << ex.what() << "\n";
    return kExitSchema;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace uisem::cli
