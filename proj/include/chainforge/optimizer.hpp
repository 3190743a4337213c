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

#ifndef CHAINFORGE_OPTIMIZER_HPP_
#define CHAINFORGE_OPTIMIZER_HPP_

#include "chainforge/flow_network.hpp"
#include "chainforge/policy.hpp"

namespace chainforge {

struct OptimizationResult {
  ChainPartition partition;
  Count khat = 0;
  std::size_t width = 0;
  Count flow_cost = 0;
  std::size_t kmax = 0;
  // A maximum was added to run the flow model and stripped afterwards.
  bool synthetic_maximum = false;
};

// Reads the chain partition encoded by a feasible flow on `rep` (lower
// bounds in place). Unit flow on out(x)->in(y) makes x the parent of y; the
// children of the maximum start the chains, and the earliest declared of
// them continues the maximum's own chain.
//
// Throws kMalformedFlow when the flow does not describe a parent relation
// (non-0/1 values, an element without exactly one parent, or with two
// children), and kNotAFeasibleFlow when it does but violates the network.
ChainPartition ExtractPartitionFromFlow(const Policy& policy,
                                        const ChainRepresentation& rep,
                                        const Flow& flow);

// Finds a chain partition into exactly width(X) chains with the minimum
// total number of issued secrets over all chain partitions.
OptimizationResult OptimalPartition(const Policy& policy);

// Cross-checks a result against the policy through every independent route.
bool VerifyResult(const Policy& policy, const OptimizationResult& result);

// Users at the policy's maximum, or zero when a maximum would be synthetic.
Count MaximumUsers(const Policy& policy);

// `pi` lifted to Policy::EnsureMaximum(): a synthetic maximum is put on top
// of the first chain, otherwise `pi` is returned as is.
ChainPartition ExtendPartition(const Policy::WithMaximum& extended,
                               const ChainPartition& pi);

}  // namespace chainforge

#endif  // CHAINFORGE_OPTIMIZER_HPP_
