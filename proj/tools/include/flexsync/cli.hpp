// Copyright 2026 The flexsync Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FLEXSYNC_CLI_HPP_
#define FLEXSYNC_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace flexsync::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line (without the program name) and returns the exit
// code. Reports go to `out`, diagnostics to `err`; trace and verdict files
// are written where the flags say.
//
//   run             simulate one adversary and check the result
//   verify          check every adversary on a clock grid
//   sweep           verify a list of reset:strobe pairs, CSV table
//   check-receiver  byte start sequence traversal, digital only
//   check-voted     voted-bit latency, digital only
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace flexsync::cli

#endif  // FLEXSYNC_CLI_HPP_
