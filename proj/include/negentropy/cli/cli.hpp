// Copyright 2026 The Negentropy Authors
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

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace negentropy::cli {

/// Process exit status. Failure modes map to disjoint codes.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kParse = 2,     // usage, malformed JSON or invalid scenario content
  kSolver = 3,    // convex solve did not certify its gap
  kBound = 4,     // a work bound check failed
  kCapacity = 5,  // dense-matrix or enumeration capacity exceeded
};

/// Runs `negentropy <command> --scenario <path> ...`. `args` excludes the
/// program name. Results go to `out` (or --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace negentropy::cli
