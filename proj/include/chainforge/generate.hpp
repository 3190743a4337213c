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

#ifndef CHAINFORGE_GENERATE_HPP_
#define CHAINFORGE_GENERATE_HPP_

#include <cstddef>
#include <cstdint>

#include "chainforge/policy.hpp"

namespace chainforge {

// Random policy over labels "x0".."x{n-1}": each pair is related with
// probability `density` along a shuffled linear order, the relation is
// transitively reduced to its Hasse diagram, and every label gets a uniform
// user count in [0, max_users]. Deterministic for a given seed.
Policy RandomPolicy(std::size_t elements, double density, std::uint64_t seed,
                    Count max_users = 5);

}  // namespace chainforge

#endif  // CHAINFORGE_GENERATE_HPP_
