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

#ifndef CHAINFORGE_METRICS_HPP_
#define CHAINFORGE_METRICS_HPP_

#include <vector>

#include "chainforge/policy.hpp"

namespace chainforge {

// gamma(y, z) = {x : x >= z and not x >= y}, defined for z < y. These are the
// labels whose users need an extra secret when z hangs directly below y.
// Throws kNotComparable unless z < y.
std::vector<ElementId> Gamma(const Policy& policy, ElementId y, ElementId z);

// Sum of user counts over Gamma(y, z).
Count Omega(const Policy& policy, ElementId y, ElementId z);

// Labels whose secrets a user at x receives: the top of each nonempty
// suffix (down-set of x) intersected with a chain. Sorted by declaration
// order. Throws kInvalidPartition.
std::vector<ElementId> Phi(const Policy& policy, ElementId x,
                           const ChainPartition& pi);

// max_x |Phi(x)|
std::size_t KMax(const Policy& policy, const ChainPartition& pi);
// sum_x |Phi(x)|
Count TotalK(const Policy& policy, const ChainPartition& pi);
// sum_x users(x) * |Phi(x)|
Count TotalKHat(const Policy& policy, const ChainPartition& pi);

// Throws kNoMaximum or kInvalidPartition.
DerivationTree TreeFromPartition(const Policy& policy,
                                 const ChainPartition& pi);

// Independent routes to TotalKHat, kept as cross-checks:
//   via tree:    chains * users(max) + sum over tree edges of Omega
//   via bottoms: sum over chain bottoms b of users in the up-set of b
Count KHatViaTree(const Policy& policy, const ChainPartition& pi);
Count KHatViaBottoms(const Policy& policy, const ChainPartition& pi);

// Users in the up-set of x.
Count UpSetWeight(const Policy& policy, ElementId x);

}  // namespace chainforge

#endif  // CHAINFORGE_METRICS_HPP_
