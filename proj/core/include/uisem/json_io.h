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

#ifndef UISEM_JSON_IO_H_
#define UISEM_JSON_IO_H_

// File formats:
//
//   screens file   [ {screen_id, width_px, height_px, raster?, elements: [
//                      {id, box: {l, t, r, b}, type, confidence, text?,
//                       icon_class?, selected?, clickable?,
//                       clickable_annotated?} ]} ]
//   OCR file       { "<screen_id>": [ {box: {l, t, r, b}, text} ] }
//   trees file     [ {screen_id, nodes: [node]} ] where node is
//                    {kind, box, alt_text, clickable, selected?, element?,
//                     children?}
//
// Box coordinates are normalized to [0, 1] with the origin top-left.

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "uisem/model.h"
#include "uisem/validate.h"

namespace uisem {

// Parses JSON text; syntax errors become SchemaError with 1-based
// line/column.
nlohmann::json ParseJsonText(std::string_view text, const std::string& source);

// IoError when unreadable, SchemaError when malformed.
nlohmann::json ReadJsonFile(const std::filesystem::path& path);
// Pretty-printed with sorted keys and a trailing newline.
void WriteJsonFile(const std::filesystem::path& path, const nlohmann::json& doc);
std::string DumpJson(const nlohmann::json& doc);

nlohmann::json ToJson(const BBox& box);
BBox BoxFromJson(const nlohmann::json& j);

nlohmann::json ToJson(const DetectedElement& element);
DetectedElement ElementFromJson(const nlohmann::json& j);

// Structural schema checks only; value checks belong to ValidateScreen.
ScreenRecord ScreenRecordFromJson(const nlohmann::json& j);
std::vector<ScreenRecord> ScreenRecordsFromJson(const nlohmann::json& j);

nlohmann::json ToJson(const Screen& screen);
nlohmann::json ToJson(const std::vector<Screen>& screens);

// Parses and validates; throws SchemaError listing the first invalid screen.
std::vector<Screen> ScreensFromJson(const nlohmann::json& j,
                                    const ValidationOptions& options = {});

using OcrByScreen = std::map<std::string, std::vector<OcrText>>;
OcrByScreen OcrFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const OcrByScreen& ocr);

nlohmann::json ToJson(const AccessibilityNode& node);
AccessibilityNode NodeFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const AccessibilityTree& tree);
AccessibilityTree TreeFromJson(const nlohmann::json& j);
std::vector<AccessibilityTree> TreesFromJson(const nlohmann::json& j);

// Decodes screen.raster_path relative to `raster_dir` into screen.raster.
// No-op when the screen has no raster path.
void LoadRaster(Screen& screen, const std::filesystem::path& raster_dir);

}  // namespace uisem

#endif  // UISEM_JSON_IO_H_
