// Copyright 2026 The Chainforge Authors
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

#ifndef CHAINFORGE_CLI_HPP_
#define CHAINFORGE_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace chainforge::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kNotAuthorized = 3,
  kTooLarge = 4,
};

struct Environment {
  // CHAINFORGE_CI=1: randomized commands must be given explicit seeds.
  bool ci = false;
};

Environment EnvironmentFromProcess();

// Runs one invocation. `args` excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err, const Environment& env);

}  // namespace chainforge::cli

#endif  // CHAINFORGE_CLI_HPP_
