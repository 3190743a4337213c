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

#ifndef CHAINFORGE_ERROR_HPP_
#define CHAINFORGE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace chainforge {

enum class Errc {
  kParse,
  kInvalidLabel,
  kDuplicateLabel,
  kUnknownLabel,
  kCycleDetected,
  kRedundantCover,
  kEmptyPoset,
  kOverflow,
  kNotComparable,
  kInvalidPartition,
  kNoMaximum,
  kWidthMismatch,
  kInvalidNetwork,
  kParallelArc,
  kInfeasible,
  kNotAFeasibleFlow,
  kMalformedFlow,
  kTooLarge,
  kInvalidParams,
  kEntropyFailure,
  kNotAuthorized,
  kInvalidBundle,
};

std::string_view ErrcName(Errc code);

// All library failures are reported through this exception type. The code
// is stable and meant for dispatch; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace chainforge

#endif  // CHAINFORGE_ERROR_HPP_
