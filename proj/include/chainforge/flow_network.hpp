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

#ifndef CHAINFORGE_FLOW_NETWORK_HPP_
#define CHAINFORGE_FLOW_NETWORK_HPP_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chainforge/policy.hpp"

namespace chainforge {

using NodeId = std::size_t;
using ArcId = std::size_t;

struct Arc {
  NodeId from;
  NodeId to;
  Count lower;
  Count upper;
  Count cost;
};

// A network (digraph, lower and upper bounds, costs, node balances). A node
// with positive balance emits that much more flow than it receives.
//
// Arcs are keyed by their ordered endpoint pair: parallel arcs, self loops
// and negative costs are rejected.
class FlowNetwork {
 public:
  // Names default to "n<id>" and must not contain whitespace.
  NodeId AddNode(std::string name = {}, Count balance = 0);
  // Throws kParallelArc, or kInvalidNetwork for unknown endpoints, a self
  // loop, negative cost, or bounds violating 0 <= lower <= upper.
  ArcId AddArc(NodeId from, NodeId to, Count lower, Count upper, Count cost);
  void SetBalance(NodeId node, Count balance) { balance_.at(node) = balance; }

  std::size_t node_count() const { return balance_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }
  const Arc& arc(ArcId a) const { return arcs_.at(a); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  Count balance(NodeId v) const { return balance_.at(v); }
  const std::vector<Count>& balances() const { return balance_; }
  const std::string& name(NodeId v) const { return names_.at(v); }
  std::optional<NodeId> FindNode(const std::string& name) const;
  std::optional<ArcId> FindArc(NodeId from, NodeId to) const;

  bool HasZeroLowerBounds() const;
  Count BalanceSum() const;

 private:
  std::vector<std::string> names_;
  std::vector<Count> balance_;
  std::vector<Arc> arcs_;
  std::map<std::pair<NodeId, NodeId>, ArcId> arc_index_;
};

// Integral flow value per arc, indexed by ArcId.
struct Flow {
  std::vector<Count> values;

  Count operator[](ArcId a) const { return values.at(a); }
  bool operator==(const Flow&) const = default;
};

// Capacity bounds on every arc and net outflow equal to the balance at
// every node. A flow of the wrong length is not feasible.
bool CheckFeasible(const FlowNetwork& net, const Flow& flow);
Count FlowCost(const FlowNetwork& net, const Flow& flow);

// The same network with every lower bound shifted to zero. A flow f' of
// `network` maps back to f = f' + lower with cost(f) = cost(f') + offset.
struct LowerBoundReduction {
  FlowNetwork network;
  std::vector<Count> lower;
  Count offset;

  Flow Restore(const Flow& reduced) const;
};

LowerBoundReduction EliminateLowerBounds(const FlowNetwork& net);

// Exact integral minimum-cost feasible flow by successive shortest paths
// with node potentials. Requires zero lower bounds and balances summing to
// zero (kInvalidNetwork otherwise); throws kInfeasible when no feasible
// flow exists. Shortest-path ties are broken by node id, so the optimum
// returned for a given network is reproducible.
Flow MinCostFlow(const FlowNetwork& net);

// Vertex-split network whose minimum-cost flows encode K-hat optimal chain
// partitions into `width` chains.
//
// Nodes: in(x) for every x except the maximum, out(x) for every x, and a
// sink "bottom". Arcs: in(x)->out(x) with bounds [1,1]; out(x)->in(y) for
// y < x with bounds [0,1] and cost Omega(x, y); out(x)->bottom with bounds
// [0,1]. The maximum's out node supplies `width` units, bottom absorbs them.
struct ChainRepresentation {
  enum class ArcKind { kSplit, kLink, kBottom };
  struct ArcInfo {
    ArcKind kind;
    ElementId from;  // x
    ElementId to;    // y for kLink, x for kSplit, unused for kBottom
  };

  FlowNetwork network;
  ElementId maximum = 0;
  std::size_t width = 0;
  std::vector<std::optional<NodeId>> in_node;
  std::vector<NodeId> out_node;
  NodeId bottom = 0;
  std::vector<ArcInfo> arc_info;

  // out(x) -> in(y)
  std::optional<ArcId> LinkArc(ElementId x, ElementId y) const;
  ArcId SplitArc(ElementId x) const;
  ArcId BottomArc(ElementId x) const;
};

// Throws kNoMaximum, or kWidthMismatch when `width` is not the poset width.
ChainRepresentation BuildChainRepresentation(const Policy& policy,
                                             std::size_t width);

// Plain-text dump for cross-checking with external solvers: one
// "name balance" line per node, then one "from to lower upper cost" line per
// arc, node names in place of ids.
void WriteNetwork(std::ostream& out, const FlowNetwork& net);
// Inverse of WriteNetwork. Throws kParse.
FlowNetwork ReadNetwork(std::istream& in);

}  // namespace chainforge

#endif  // CHAINFORGE_FLOW_NETWORK_HPP_
