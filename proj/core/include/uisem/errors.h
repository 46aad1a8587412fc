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

#ifndef UISEM_ERRORS_H_
#define UISEM_ERRORS_H_

#include <stdexcept>
#include <string>

namespace uisem {

// Input does not conform to one of the documented file schemas.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two collections that must describe the same element ids (or screen ids)
// do not.
class IdMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two orderings are not permutations of the same element set.
class SetMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace uisem

#endif  // UISEM_ERRORS_H_
