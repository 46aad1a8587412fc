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

#ifndef UISEM_VALIDATE_H_
#define UISEM_VALIDATE_H_

#include <optional>
#include <string>
#include <vector>

#include "uisem/model.h"

namespace uisem {

// Unvalidated element as it appears in a screens file. Boxes may be
// degenerate or outside the unit square here; ValidateScreen decides.
struct ElementRecord {
  std::string id;
  double l = 0, t = 0, r = 0, b = 0;
  std::string type;
  double confidence = 1.0;
  std::optional<std::string> text;
  std::optional<std::string> icon_class;
  std::optional<bool> selected;
  std::optional<bool> clickable;
  std::optional<bool> clickable_annotated;
};

struct ScreenRecord {
  std::string screen_id;
  long long width_px = 0;
  long long height_px = 0;
  std::vector<ElementRecord> elements;
  std::optional<std::string> raster_path;
};

struct Issue {
  enum class Severity { kWarning, kError };
  Severity severity = Severity::kError;
  std::string code;
  std::string element_id;  // empty for screen-level issues
  std::string message;
};

struct ValidationResult {
  // Present iff there are no errors.
  std::optional<Screen> screen;
  std::vector<Issue> issues;

  bool ok() const { return screen.has_value(); }
  std::vector<Issue> errors() const;
  std::vector<Issue> warnings() const;
};

struct ValidationOptions {
  // Annotation data may carry TabButton/Other; detector output may not.
  bool allow_derived_types = false;
};

// Normalizes a screen (boxes clamped to the unit square, duplicate ids
// suffixed) or reports every violation found. An empty screen is a warning.
ValidationResult ValidateScreen(const ScreenRecord& record,
                                const ValidationOptions& options = {});

// Inverse of ValidateScreen for already-valid screens.
ScreenRecord ToRecord(const Screen& screen);

}  // namespace uisem

#endif  // UISEM_VALIDATE_H_
