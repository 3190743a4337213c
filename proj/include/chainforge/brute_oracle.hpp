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

#ifndef CHAINFORGE_BRUTE_ORACLE_HPP_
#define CHAINFORGE_BRUTE_ORACLE_HPP_

#include <cstddef>
#include <functional>

#include "chainforge/policy.hpp"

namespace chainforge {

inline constexpr std::size_t kDefaultOracleLimit = 9;

// Exhaustive enumeration of chain partitions, for certifying the optimizer
// on small posets.
//
// Elements are placed along the poset's linear extension (bottom up); each
// one either extends a chain whose current top lies below it or opens a new
// chain, so every partition is produced exactly once. Chains come out
// ordered by the declaration index of their bottom element.
//
// Returns the number of partitions visited. Throws kTooLarge when the poset
// has more than `limit` elements.
std::size_t ForEachChainPartition(
    const Poset& poset, const std::function<void(const ChainPartition&)>& visit,
    std::size_t limit = kDefaultOracleLimit);

struct OracleReport {
  Count min_khat = 0;
  ChainPartition argmin;
  std::size_t partitions_examined = 0;
  std::size_t min_chain_count_at_min = 0;
};

// Minimum TotalKHat over every chain partition. The argmin is the first
// minimiser in enumeration order. Throws kTooLarge or kEmptyPoset.
OracleReport MinKHatBrute(const Policy& policy,
                          std::size_t limit = kDefaultOracleLimit);

}  // namespace chainforge

#endif  // CHAINFORGE_BRUTE_ORACLE_HPP_
