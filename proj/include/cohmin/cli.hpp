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

#ifndef COHMIN_CLI_HPP_
#define COHMIN_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace cohmin {

// Exit codes of cli_main.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitRejected = 3;
inline constexpr int kExitResource = 4;

// Runs one command. `args` excludes the program name. Results go to `out`
// (or the -o file), diagnostics to `err`.
int cli_main(const std::vector<std::string> &args, std::ostream &out,
             std::ostream &err);

}  // namespace cohmin

#endif  // COHMIN_CLI_HPP_
