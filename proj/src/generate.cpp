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

#include "chainforge/generate.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include <boost/dynamic_bitset.hpp>

#include "chainforge/error.hpp"

namespace chainforge {

Policy RandomPolicy(std::size_t elements, double density, std::uint64_t seed,
                    Count max_users) {
  if (elements == 0 || !(density >= 0.0 && density <= 1.0) || max_users < 0) {
    throw Error(Errc::kInvalidParams,
                "need elements >= 1, 0 <= density <= 1, max_users >= 0");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(elements);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  // above[i]: positions strictly above position i (transitively closed,
  // filled from the top of the linear order down).
  std::bernoulli_distribution edge(density);
  std::vector<boost::dynamic_bitset<>> above(elements,
                                             boost::dynamic_bitset<>(elements));
  std::vector<std::vector<std::size_t>> direct(elements);
  for (std::size_t i = 0; i < elements; ++i) {
    for (std::size_t j = i + 1; j < elements; ++j) {
      if (edge(rng)) direct[i].push_back(j);
    }
  }
  for (std::size_t i = elements; i-- > 0;) {
    for (std::size_t j : direct[i]) {
      above[i].set(j);
      above[i] |= above[j];
    }
  }

  std::vector<std::string> labels;
  for (std::size_t v = 0; v < elements; ++v) {
    labels.push_back("x" + std::to_string(v));
  }
  std::vector<Cover> covers;
  for (std::size_t i = 0; i < elements; ++i) {
    boost::dynamic_bitset<> implied(elements);
    for (auto j = above[i].find_first(); j != boost::dynamic_bitset<>::npos;
         j = above[i].find_next(j)) {
      implied |= above[j];
    }
    const boost::dynamic_bitset<> covering = above[i] - implied;
    for (auto j = covering.find_first(); j != boost::dynamic_bitset<>::npos;
         j = covering.find_next(j)) {
      covers.push_back({labels[order[i]], labels[order[j]]});
    }
  }

  std::uniform_int_distribution<Count> users(0, max_users);
  std::vector<Count> counts(elements);
  for (auto& c : counts) c = users(rng);
  return Policy(Poset::Build(std::move(labels), covers), std::move(counts));
}

}  // namespace chainforge
