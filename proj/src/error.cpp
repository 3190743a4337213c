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

#include "chainforge/error.hpp"

namespace chainforge {

std::string_view ErrcName(Errc code) {
  switch (code) {
    case Errc::kParse: return "ParseError";
    case Errc::kInvalidLabel: return "InvalidLabel";
    case Errc::kDuplicateLabel: return "DuplicateLabel";
    case Errc::kUnknownLabel: return "UnknownLabel";
    case Errc::kCycleDetected: return "CycleDetected";
    case Errc::kRedundantCover: return "RedundantCover";
    case Errc::kEmptyPoset: return "EmptyPoset";
    case Errc::kOverflow: return "Overflow";
    case Errc::kNotComparable: return "NotComparable";
    case Errc::kInvalidPartition: return "InvalidPartition";
    case Errc::kNoMaximum: return "NoMaximum";
    case Errc::kWidthMismatch: return "WidthMismatch";
    case Errc::kInvalidNetwork: return "InvalidNetwork";
    case Errc::kParallelArc: return "ParallelArc";
    case Errc::kInfeasible: return "Infeasible";
    case Errc::kNotAFeasibleFlow: return "NotAFeasibleFlow";
    case Errc::kMalformedFlow: return "MalformedFlow";
    case Errc::kTooLarge: return "TooLarge";
    case Errc::kInvalidParams: return "InvalidParams";
    case Errc::kEntropyFailure: return "EntropyFailure";
    case Errc::kNotAuthorized: return "NotAuthorized";
    case Errc::kInvalidBundle: return "InvalidBundle";
  }
  return "Unknown";
}

}  // namespace chainforge
