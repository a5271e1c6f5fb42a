// Copyright 2026 The lrpsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lrp::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInvalidInput = 2,
  kIoFailure = 3,
};

/// Runs one invocation; args excludes the program name. Errors are reported
/// on `err` as a single line "error: <kind>: <message>".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Fast invariant suite behind the `selftest` subcommand. `fault` names a
/// deliberate corruption ("adjacency") used to exercise the failure path.
int selftest(std::ostream& out, std::ostream& err, const std::string& fault = "");

}  // namespace lrp::cli
