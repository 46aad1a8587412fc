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

#include "uisem/json_io.h"

#include <fstream>
#include <sstream>

#include "uisem/errors.h"

namespace uisem {
namespace {

using nlohmann::json;

const json& Field(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw SchemaError(where + ": missing field '" + key + "'");
  }
  return *it;
}

std::string StringField(const json& j, const char* key,
                        const std::string& where) {
  const json& v = Field(j, key, where);
  if (!v.is_string()) {
    throw SchemaError(where + ": field '" + key + "' must be a string");
  }
  return v.get<std::string>();
}

double NumberField(const json& j, const char* key, const std::string& where) {
  const json& v = Field(j, key, where);
  if (!v.is_number()) {
    throw SchemaError(where + ": field '" + key + "' must be a number");
  }
  return v.get<double>();
}

template <typename T>
std::optional<T> OptionalField(const json& j, const char* key,
                               const std::string& where) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if constexpr (std::is_same_v<T, bool>) {
    if (!it->is_boolean()) {
      throw SchemaError(where + ": field '" + key + "' must be a boolean");
    }
  } else {
    if (!it->is_string()) {
      throw SchemaError(where + ": field '" + key + "' must be a string");
    }
  }
  return it->get<T>();
}

void RequireObject(const json& j, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
}

void RequireArray(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array");
}

template <typename T>
void PutOptional(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

json NullableBool(const std::optional<bool>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json ParseJsonText(std::string_view text, const std::string& source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    int line = 1;
    int column = 1;
    const size_t end = std::min<size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream msg;
    msg << source << ":" << line << ":" << column << ": malformed JSON";
    throw SchemaError(msg.str(), line, column);
  }
}

json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return ParseJsonText(buffer.str(), path.string());
}

std::string DumpJson(const json& doc) { return doc.dump(2) + "\n"; }

void WriteJsonFile(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << DumpJson(doc);
  if (!out) throw IoError("cannot write " + path.string());
}

json ToJson(const BBox& box) {
  return json{{"l", box.left()}, {"t", box.top()}, {"r", box.right()},
              {"b", box.bottom()}};
}

BBox BoxFromJson(const json& j) {
  RequireObject(j, "box");
  auto box = BBox::TryMake(NumberField(j, "l", "box"), NumberField(j, "t", "box"),
                           NumberField(j, "r", "box"), NumberField(j, "b", "box"));
  if (!box) throw SchemaError("box: degenerate box");
  return *box;
}

json ToJson(const DetectedElement& e) {
  json j{{"id", e.id},
         {"box", ToJson(e.box)},
         {"type", std::string(ToString(e.type))},
         {"confidence", e.confidence}};
  PutOptional(j, "text", e.text);
  PutOptional(j, "icon_class", e.icon_class);
  PutOptional(j, "selected", e.selected);
  PutOptional(j, "clickable", e.clickable);
  PutOptional(j, "clickable_annotated", e.clickable_annotated);
  return j;
}

DetectedElement ElementFromJson(const json& j) {
  RequireObject(j, "element");
  const std::string id = StringField(j, "id", "element");
  const std::string where = "element '" + id + "'";
  const std::string type_name = StringField(j, "type", where);
  auto type = ParseUIType(type_name);
  if (!type) throw SchemaError(where + ": unknown type '" + type_name + "'");
  return DetectedElement{
      .id = id,
      .box = BoxFromJson(Field(j, "box", where)),
      .type = *type,
      .confidence = NumberField(j, "confidence", where),
      .text = OptionalField<std::string>(j, "text", where),
      .icon_class = OptionalField<std::string>(j, "icon_class", where),
      .selected = OptionalField<bool>(j, "selected", where),
      .clickable = OptionalField<bool>(j, "clickable", where),
      .clickable_annotated = OptionalField<bool>(j, "clickable_annotated", where),
  };
}

ScreenRecord ScreenRecordFromJson(const json& j) {
  RequireObject(j, "screen");
  ScreenRecord record;
  record.screen_id = StringField(j, "screen_id", "screen");
  const std::string where = "screen '" + record.screen_id + "'";
  const json& w = Field(j, "width_px", where);
  const json& h = Field(j, "height_px", where);
  if (!w.is_number_integer() || !h.is_number_integer()) {
    throw SchemaError(where + ": width_px/height_px must be integers");
  }
  record.width_px = w.get<long long>();
  record.height_px = h.get<long long>();
  record.raster_path = OptionalField<std::string>(j, "raster", where);
  const json& elements = Field(j, "elements", where);
  RequireArray(elements, where + ".elements");
  for (const json& e : elements) {
    RequireObject(e, where + ".elements[]");
    ElementRecord er;
    er.id = StringField(e, "id", where + ".elements[]");
    const std::string ewhere = where + " element '" + er.id + "'";
    const json& box = Field(e, "box", ewhere);
    RequireObject(box, ewhere + ".box");
    er.l = NumberField(box, "l", ewhere + ".box");
    er.t = NumberField(box, "t", ewhere + ".box");
    er.r = NumberField(box, "r", ewhere + ".box");
    er.b = NumberField(box, "b", ewhere + ".box");
    er.type = StringField(e, "type", ewhere);
    er.confidence = NumberField(e, "confidence", ewhere);
    er.text = OptionalField<std::string>(e, "text", ewhere);
    er.icon_class = OptionalField<std::string>(e, "icon_class", ewhere);
    er.selected = OptionalField<bool>(e, "selected", ewhere);
    er.clickable = OptionalField<bool>(e, "clickable", ewhere);
    er.clickable_annotated = OptionalField<bool>(e, "clickable_annotated", ewhere);
    record.elements.push_back(std::move(er));
  }
  return record;
}

std::vector<ScreenRecord> ScreenRecordsFromJson(const json& j) {
  RequireArray(j, "screens file");
  std::vector<ScreenRecord> out;
  out.reserve(j.size());
  for (const json& s : j) out.push_back(ScreenRecordFromJson(s));
  return out;
}

json ToJson(const Screen& screen) {
  json elements = json::array();
  for (const auto& e : screen.elements) elements.push_back(ToJson(e));
  json j{{"screen_id", screen.screen_id},
         {"width_px", screen.width_px},
         {"height_px", screen.height_px},
         {"elements", std::move(elements)}};
  PutOptional(j, "raster", screen.raster_path);
  return j;
}

json ToJson(const std::vector<Screen>& screens) {
  json out = json::array();
  for (const auto& s : screens) out.push_back(ToJson(s));
  return out;
}

std::vector<Screen> ScreensFromJson(const json& j,
                                    const ValidationOptions& options) {
  std::vector<Screen> out;
  for (const ScreenRecord& record : ScreenRecordsFromJson(j)) {
    ValidationResult result = ValidateScreen(record, options);
    if (!result.ok()) {
      const Issue first = result.errors().front();
      throw SchemaError("screen '" + record.screen_id + "' element '" +
                        first.element_id + "': " + first.message);
    }
    out.push_back(std::move(*result.screen));
  }
  return out;
}

OcrByScreen OcrFromJson(const json& j) {
  RequireObject(j, "OCR file");
  OcrByScreen out;
  for (const auto& [screen_id, lines] : j.items()) {
    RequireArray(lines, "OCR '" + screen_id + "'");
    auto& dest = out[screen_id];
    for (const json& line : lines) {
      RequireObject(line, "OCR '" + screen_id + "'[]");
      dest.push_back(OcrText{
          BoxFromJson(Field(line, "box", "OCR '" + screen_id + "'")),
          StringField(line, "text", "OCR '" + screen_id + "'")});
    }
  }
  return out;
}

json ToJson(const OcrByScreen& ocr) {
  json out = json::object();
  for (const auto& [screen_id, lines] : ocr) {
    json arr = json::array();
    for (const auto& line : lines) {
      arr.push_back(json{{"box", ToJson(line.box)}, {"text", line.text}});
    }
    out[screen_id] = std::move(arr);
  }
  return out;
}

json ToJson(const AccessibilityNode& node) {
  json j{{"kind", std::string(ToString(node.kind))},
         {"box", ToJson(node.box)},
         {"alt_text", node.alt_text},
         {"clickable", NullableBool(node.clickable)}};
  PutOptional(j, "selected", node.selected);
  if (node.element) j["element"] = ToJson(*node.element);
  if (node.is_group()) {
    json children = json::array();
    for (const auto& c : node.children) children.push_back(ToJson(c));
    j["children"] = std::move(children);
  }
  return j;
}

AccessibilityNode NodeFromJson(const json& j) {
  RequireObject(j, "node");
  const std::string kind_name = StringField(j, "kind", "node");
  auto kind = ParseNodeKind(kind_name);
  if (!kind) throw SchemaError("node: unknown kind '" + kind_name + "'");
  AccessibilityNode node{.kind = *kind, .box = BoxFromJson(Field(j, "box", "node"))};
  node.alt_text = StringField(j, "alt_text", "node");
  node.clickable = OptionalField<bool>(j, "clickable", "node");
  node.selected = OptionalField<bool>(j, "selected", "node");
  if (auto it = j.find("element"); it != j.end()) {
    node.element = ElementFromJson(*it);
  }
  if (*kind == NodeKind::kElement && !node.element) {
    throw SchemaError("node: element node without 'element'");
  }
  if (auto it = j.find("children"); it != j.end()) {
    RequireArray(*it, "node.children");
    for (const json& c : *it) node.children.push_back(NodeFromJson(c));
  }
  return node;
}

json ToJson(const AccessibilityTree& tree) {
  json nodes = json::array();
  for (const auto& n : tree.nodes) nodes.push_back(ToJson(n));
  return json{{"screen_id", tree.screen_id}, {"nodes", std::move(nodes)}};
}

AccessibilityTree TreeFromJson(const json& j) {
  RequireObject(j, "tree");
  AccessibilityTree tree;
  tree.screen_id = StringField(j, "screen_id", "tree");
  const json& nodes = Field(j, "nodes", "tree");
  RequireArray(nodes, "tree.nodes");
  for (const json& n : nodes) tree.nodes.push_back(NodeFromJson(n));
  return tree;
}

std::vector<AccessibilityTree> TreesFromJson(const json& j) {
  RequireArray(j, "trees file");
  std::vector<AccessibilityTree> out;
  for (const json& t : j) out.push_back(TreeFromJson(t));
  return out;
}

void LoadRaster(Screen& screen, const std::filesystem::path& raster_dir) {
  if (!screen.raster_path) return;
  screen.raster = std::make_shared<const Raster>(
      ReadPng(raster_dir / *screen.raster_path));
}

}  // namespace uisem
