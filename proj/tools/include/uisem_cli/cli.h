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

#ifndef UISEM_CLI_CLI_H_
#define UISEM_CLI_CLI_H_

#include <ostream>

namespace uisem::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitIdMismatch = 4;

// Runs the `uisem` command line. Results go to `out` unless --out-dir is
// given; diagnostics and soft errors go to `err`.
int Run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace uisem::cli

#endif  // UISEM_CLI_CLI_H_
