// Copyright 2026 The posdom Authors.
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

#ifndef POSDOM_CLI_HPP_
#define POSDOM_CLI_HPP_

#include <iosfwd>

namespace posdom {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitValidation = 2,
  kExitModel = 3,
  kExitNoGranularity = 4,
};

// Entry point of the `posdom` tool: subcommands carve, eval, refine, sweep.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace posdom

#endif  // POSDOM_CLI_HPP_
