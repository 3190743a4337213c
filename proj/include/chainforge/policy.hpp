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

#ifndef CHAINFORGE_POLICY_HPP_
#define CHAINFORGE_POLICY_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "chainforge/poset.hpp"

namespace chainforge {

// User counts and costs. Always nonnegative; signed so that flow residuals
// share the type.
using Count = std::int64_t;

// An information flow policy reduced to what the secret-count formulas need:
// the label poset and the number of users holding each label.
class Policy {
 public:
  // Every label gets a count of zero.
  explicit Policy(Poset poset);
  // Throws kInvalidParams for a size mismatch or negative count, and
  // kOverflow when |X| * sum(counts) does not fit in a Count.
  Policy(Poset poset, std::vector<Count> user_counts);

  const Poset& poset() const { return poset_; }
  Count users(ElementId x) const { return user_counts_.at(x); }
  const std::vector<Count>& user_counts() const { return user_counts_; }
  Count total_users() const { return total_users_; }

  // The same policy over EnsureMaximum(poset()); a synthetic maximum gets no
  // users.
  struct WithMaximum;
  WithMaximum EnsureMaximum() const;

 private:
  Poset poset_;
  std::vector<Count> user_counts_;
  Count total_users_ = 0;
};

struct Policy::WithMaximum {
  Policy policy;
  ElementId maximum;
  bool added;
};

// Disjoint chains covering a poset. Each chain is stored top first.
class ChainPartition {
 public:
  // Blocks may list their elements in any order; each is sorted top first.
  // Throws kInvalidPartition unless IsChainPartition(poset, blocks).
  static ChainPartition FromBlocks(const Poset& poset,
                                   std::vector<std::vector<ElementId>> blocks);

  const std::vector<std::vector<ElementId>>& chains() const { return chains_; }
  std::size_t chain_count() const { return chains_.size(); }
  std::size_t element_count() const { return chain_of_.size(); }

  std::size_t chain_of(ElementId x) const { return chain_of_.at(x); }
  ElementId top(std::size_t chain) const { return chains_.at(chain).front(); }
  ElementId bottom(std::size_t chain) const { return chains_.at(chain).back(); }
  std::vector<ElementId> Tops() const;
  std::vector<ElementId> Bottoms() const;
  // The element directly above / below x in its chain.
  std::optional<ElementId> ChainParent(ElementId x) const;
  std::optional<ElementId> ChainChild(ElementId x) const;

  // Throws kInvalidPartition unless this partition is a chain partition of
  // `poset` (same element count, every chain strictly decreasing).
  void CheckAgainst(const Poset& poset) const;

  bool operator==(const ChainPartition& other) const {
    return chains_ == other.chains_;
  }

 private:
  std::vector<std::vector<ElementId>> chains_;
  std::vector<std::size_t> chain_of_;
  std::vector<std::size_t> position_;
};

// Chain links plus every chain top other than the maximum's own hung below
// the maximum.
struct DerivationTree {
  ElementId root;
  std::vector<std::optional<ElementId>> parent;
};

}  // namespace chainforge

#endif  // CHAINFORGE_POLICY_HPP_
