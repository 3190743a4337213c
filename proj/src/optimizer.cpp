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

#include "chainforge/optimizer.hpp"

#include <algorithm>
#include <optional>

#include "chainforge/error.hpp"
#include "chainforge/metrics.hpp"

namespace chainforge {

ChainPartition ExtractPartitionFromFlow(const Policy& policy,
                                        const ChainRepresentation& rep,
                                        const Flow& flow) {
  const Poset& p = policy.poset();
  const FlowNetwork& net = rep.network;
  if (flow.values.size() != net.arc_count()) {
    throw Error(Errc::kMalformedFlow, "flow length does not match arcs");
  }

  std::vector<std::optional<ElementId>> parent(p.size());
  std::vector<std::vector<ElementId>> children(p.size());
  for (ArcId a = 0; a < net.arc_count(); ++a) {
    const Count f = flow[a];
    if (f != 0 && f != 1) {
      throw Error(Errc::kMalformedFlow, "flow value outside {0,1}");
    }
    const auto& info = rep.arc_info[a];
    if (f == 0 || info.kind != ChainRepresentation::ArcKind::kLink) continue;
    if (parent[info.to]) {
      throw Error(Errc::kMalformedFlow,
                  "'" + p.label(info.to) + "' has two parents");
    }
    parent[info.to] = info.from;
    children[info.from].push_back(info.to);
  }
  for (ElementId x = 0; x < p.size(); ++x) {
    if (x == rep.maximum) continue;
    if (!parent[x]) {
      throw Error(Errc::kMalformedFlow, "'" + p.label(x) + "' has no parent");
    }
    if (children[x].size() > 1) {
      throw Error(Errc::kMalformedFlow,
                  "'" + p.label(x) + "' has two children");
    }
  }
  if (!CheckFeasible(net, flow)) {
    throw Error(Errc::kNotAFeasibleFlow, "flow violates the network");
  }

  // children[] is filled in arc order, i.e. by declaration order of y.
  const auto& tops = children[rep.maximum];
  std::vector<std::vector<ElementId>> blocks;
  auto walk = [&](ElementId from, std::vector<ElementId>& block) {
    for (std::optional<ElementId> x = from; x;) {
      block.push_back(*x);
      x = children[*x].empty() ? std::nullopt
                               : std::optional<ElementId>(children[*x][0]);
    }
  };
  blocks.push_back({rep.maximum});
  if (!tops.empty()) walk(tops.front(), blocks.back());
  for (std::size_t j = 1; j < tops.size(); ++j) walk(tops[j], blocks.emplace_back());
  return ChainPartition::FromBlocks(p, std::move(blocks));
}

Count MaximumUsers(const Policy& policy) {
  auto top = policy.poset().Maximum();
  return top ? policy.users(*top) : 0;
}

ChainPartition ExtendPartition(const Policy::WithMaximum& extended,
                               const ChainPartition& pi) {
  if (!extended.added) return pi;
  auto blocks = pi.chains();
  if (blocks.empty()) blocks.emplace_back();
  blocks.front().insert(blocks.front().begin(), extended.maximum);
  return ChainPartition::FromBlocks(extended.policy.poset(), std::move(blocks));
}

OptimizationResult OptimalPartition(const Policy& policy) {
  const Poset& p = policy.poset();
  if (p.empty()) throw Error(Errc::kEmptyPoset, "empty policy");

  const auto extended = policy.EnsureMaximum();
  const std::size_t width = extended.policy.poset().Width();
  const auto rep = BuildChainRepresentation(extended.policy, width);
  const auto reduced = EliminateLowerBounds(rep.network);
  const Flow shifted = MinCostFlow(reduced.network);
  const Flow flow = reduced.Restore(shifted);
  const Count cost = FlowCost(reduced.network, shifted) + reduced.offset;

  ChainPartition pi = ExtractPartitionFromFlow(extended.policy, rep, flow);
  if (extended.added) {
    // The synthetic maximum heads the first chain; drop it.
    auto blocks = pi.chains();
    blocks.front().erase(blocks.front().begin());
    if (blocks.front().empty()) blocks.erase(blocks.begin());
    pi = ChainPartition::FromBlocks(p, std::move(blocks));
  }

  OptimizationResult result{pi, TotalKHat(policy, pi), width, cost,
                            KMax(policy, pi), extended.added};
  return result;
}

bool VerifyResult(const Policy& policy, const OptimizationResult& result) {
  const Poset& p = policy.poset();
  if (p.empty()) return false;
  try {
    result.partition.CheckAgainst(p);
  } catch (const Error&) {
    return false;
  }
  if (result.width != p.Width()) return false;
  if (result.partition.chain_count() != result.width) return false;

  const Count direct = TotalKHat(policy, result.partition);
  const Count bottoms = KHatViaBottoms(policy, result.partition);
  const auto extended = policy.EnsureMaximum();
  const Count tree = KHatViaTree(extended.policy,
                                 ExtendPartition(extended, result.partition));
  if (direct != bottoms || direct != tree || direct != result.khat) {
    return false;
  }
  if (result.khat != static_cast<Count>(result.width) * MaximumUsers(policy) +
                         result.flow_cost) {
    return false;
  }
  return result.kmax == KMax(policy, result.partition) &&
         result.kmax <= result.width;
}

}  // namespace chainforge
