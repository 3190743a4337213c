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

#include "chainforge/metrics.hpp"

#include <algorithm>

#include "chainforge/error.hpp"

namespace chainforge {

std::vector<ElementId> Gamma(const Policy& policy, ElementId y, ElementId z) {
  const Poset& p = policy.poset();
  if (!p.Less(z, y)) {
    throw Error(Errc::kNotComparable,
                "gamma needs " + p.label(z) + " < " + p.label(y));
  }
  std::vector<ElementId> out;
  for (ElementId x = 0; x < p.size(); ++x) {
    if (p.Leq(z, x) && !p.Leq(y, x)) out.push_back(x);
  }
  return out;
}

Count Omega(const Policy& policy, ElementId y, ElementId z) {
  Count sum = 0;
  for (ElementId x : Gamma(policy, y, z)) sum += policy.users(x);
  return sum;
}

std::vector<ElementId> Phi(const Policy& policy, ElementId x,
                           const ChainPartition& pi) {
  const Poset& p = policy.poset();
  pi.CheckAgainst(p);
  std::vector<ElementId> out;
  for (const auto& chain : pi.chains()) {
    // The down-set of x meets each chain in a suffix; its first hit from the
    // top is the suffix maximum.
    auto hit = std::find_if(chain.begin(), chain.end(),
                            [&](ElementId c) { return p.Leq(c, x); });
    if (hit != chain.end()) out.push_back(*hit);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t KMax(const Policy& policy, const ChainPartition& pi) {
  std::size_t best = 0;
  for (ElementId x = 0; x < policy.poset().size(); ++x) {
    best = std::max(best, Phi(policy, x, pi).size());
  }
  return best;
}

Count TotalK(const Policy& policy, const ChainPartition& pi) {
  Count total = 0;
  for (ElementId x = 0; x < policy.poset().size(); ++x) {
    total += static_cast<Count>(Phi(policy, x, pi).size());
  }
  return total;
}

Count TotalKHat(const Policy& policy, const ChainPartition& pi) {
  Count total = 0;
  for (ElementId x = 0; x < policy.poset().size(); ++x) {
    total += policy.users(x) * static_cast<Count>(Phi(policy, x, pi).size());
  }
  return total;
}

DerivationTree TreeFromPartition(const Policy& policy,
                                 const ChainPartition& pi) {
  const Poset& p = policy.poset();
  pi.CheckAgainst(p);
  auto root = p.Maximum();
  if (!root) throw Error(Errc::kNoMaximum, "poset has no unique maximum");

  DerivationTree tree{*root, std::vector<std::optional<ElementId>>(p.size())};
  for (ElementId x = 0; x < p.size(); ++x) {
    if (x == *root) continue;
    auto up = pi.ChainParent(x);
    tree.parent[x] = up ? *up : *root;
  }
  return tree;
}

Count KHatViaTree(const Policy& policy, const ChainPartition& pi) {
  const DerivationTree tree = TreeFromPartition(policy, pi);
  Count total =
      static_cast<Count>(pi.chain_count()) * policy.users(tree.root);
  for (ElementId z = 0; z < tree.parent.size(); ++z) {
    if (tree.parent[z]) total += Omega(policy, *tree.parent[z], z);
  }
  return total;
}

Count UpSetWeight(const Policy& policy, ElementId x) {
  Count sum = 0;
  for (ElementId y : policy.poset().UpSet(x)) sum += policy.users(y);
  return sum;
}

Count KHatViaBottoms(const Policy& policy, const ChainPartition& pi) {
  pi.CheckAgainst(policy.poset());
  Count total = 0;
  for (ElementId b : pi.Bottoms()) total += UpSetWeight(policy, b);
  return total;
}

}  // namespace chainforge
