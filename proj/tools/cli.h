// Copyright 2026 The radlabel Authors
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

#ifndef RADLABEL_TOOLS_CLI_H_
#define RADLABEL_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace radlabel::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;  // library or I/O error
inline constexpr int kUsage = 2;    // bad command line or config file

// Runs one command. `args` excludes the program name. A `--config FILE`
// argument supplies key = value defaults for the chosen subcommand; explicit
// flags override them.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace radlabel::cli

#endif  // RADLABEL_TOOLS_CLI_H_
