// Copyright (c) 2026 The perfseg Authors
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

#ifndef PERFSEG__CLI_HPP_
#define PERFSEG__CLI_HPP_

#include <string>
#include <vector>

namespace perfseg::cli
{

/// Process exit codes.
enum ExitCode : int
{
  kOk = 0,
  kUsageError = 1,
  kProcessingError = 2
};

/**
 * @brief Entry point of the `perfseg` tool.
 *
 * Subcommands: segment, eval, phantom, profile. `args` excludes the program
 * name. Data goes to files; diagnostics and timing go to stderr.
 */
int run(const std::vector<std::string> & args);

}  // namespace perfseg::cli

#endif  // PERFSEG__CLI_HPP_
