// Copyright 2026 The matchmap Authors
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

#ifndef MATCHMAP_TOOLS_CLI_H_
#define MATCHMAP_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace matchmap::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kRuntimeFailure = 1;
inline constexpr int kInvalidInput = 2;

// Runs the command line `args` (args[0] is the program name). Normal output
// goes to `out`; failures write one JSON line {"error": ..., ...} to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace matchmap::cli

#endif  // MATCHMAP_TOOLS_CLI_H_
