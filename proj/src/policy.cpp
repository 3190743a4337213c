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

#include "chainforge/policy.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "chainforge/error.hpp"

namespace chainforge {

Policy::Policy(Poset poset)
    : Policy(std::move(poset), std::vector<Count>()) {}

Policy::Policy(Poset poset, std::vector<Count> user_counts)
    : poset_(std::move(poset)), user_counts_(std::move(user_counts)) {
  if (user_counts_.empty()) user_counts_.assign(poset_.size(), 0);
  if (user_counts_.size() != poset_.size()) {
    throw Error(Errc::kInvalidParams, "user count list does not match labels");
  }
  for (Count c : user_counts_) {
    if (c < 0) throw Error(Errc::kInvalidParams, "negative user count");
    if (__builtin_add_overflow(total_users_, c, &total_users_)) {
      throw Error(Errc::kOverflow, "total user count overflows");
    }
  }
  // Every secret count and flow cost is bounded by |X| * sum(users).
  Count bound = 0;
  if (__builtin_mul_overflow(total_users_,
                             static_cast<Count>(poset_.size()) + 1, &bound)) {
    throw Error(Errc::kOverflow, "user counts too large for exact totals");
  }
}

Policy::WithMaximum Policy::EnsureMaximum() const {
  auto extended = chainforge::EnsureMaximum(poset_);
  std::vector<Count> counts = user_counts_;
  if (extended.added) counts.push_back(0);
  return {Policy(std::move(extended.poset), std::move(counts)),
          extended.maximum, extended.added};
}

ChainPartition ChainPartition::FromBlocks(
    const Poset& poset, std::vector<std::vector<ElementId>> blocks) {
  if (!IsChainPartition(poset, blocks)) {
    throw Error(Errc::kInvalidPartition, "blocks are not a chain partition");
  }
  ChainPartition pi;
  pi.chain_of_.assign(poset.size(), 0);
  pi.position_.assign(poset.size(), 0);
  for (auto& block : blocks) {
    // Within a chain, a larger element has a strictly larger down-set.
    std::sort(block.begin(), block.end(), [&](ElementId a, ElementId b) {
      return poset.DownSetSize(a) > poset.DownSetSize(b);
    });
    for (std::size_t i = 0; i < block.size(); ++i) {
      pi.chain_of_[block[i]] = pi.chains_.size();
      pi.position_[block[i]] = i;
    }
    pi.chains_.push_back(std::move(block));
  }
  return pi;
}

std::vector<ElementId> ChainPartition::Tops() const {
  std::vector<ElementId> out;
  for (const auto& c : chains_) out.push_back(c.front());
  return out;
}

std::vector<ElementId> ChainPartition::Bottoms() const {
  std::vector<ElementId> out;
  for (const auto& c : chains_) out.push_back(c.back());
  return out;
}

std::optional<ElementId> ChainPartition::ChainParent(ElementId x) const {
  const auto pos = position_.at(x);
  if (pos == 0) return std::nullopt;
  return chains_[chain_of_[x]][pos - 1];
}

std::optional<ElementId> ChainPartition::ChainChild(ElementId x) const {
  const auto& chain = chains_[chain_of_.at(x)];
  const auto pos = position_[x];
  if (pos + 1 == chain.size()) return std::nullopt;
  return chain[pos + 1];
}

void ChainPartition::CheckAgainst(const Poset& poset) const {
  if (element_count() != poset.size()) {
    throw Error(Errc::kInvalidPartition,
                "partition covers " + std::to_string(element_count()) +
                    " elements, poset has " + std::to_string(poset.size()));
  }
  for (const auto& chain : chains_) {
    for (std::size_t i = 1; i < chain.size(); ++i) {
      if (!poset.Less(chain[i], chain[i - 1])) {
        throw Error(Errc::kInvalidPartition,
                    "'" + poset.label(chain[i]) + "' is not below '" +
                        poset.label(chain[i - 1]) + "'");
      }
    }
  }
}

}  // namespace chainforge
