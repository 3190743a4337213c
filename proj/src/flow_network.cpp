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

#include "chainforge/flow_network.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "chainforge/error.hpp"
#include "chainforge/metrics.hpp"

namespace chainforge {

NodeId FlowNetwork::AddNode(std::string name, Count balance) {
  const NodeId id = balance_.size();
  if (name.empty()) name = "n" + std::to_string(id);
  for (char c : name) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      throw Error(Errc::kInvalidNetwork, "node name contains whitespace");
    }
  }
  names_.push_back(std::move(name));
  balance_.push_back(balance);
  return id;
}

ArcId FlowNetwork::AddArc(NodeId from, NodeId to, Count lower, Count upper,
                          Count cost) {
  if (from >= node_count() || to >= node_count()) {
    throw Error(Errc::kInvalidNetwork, "arc endpoint out of range");
  }
  if (from == to) throw Error(Errc::kInvalidNetwork, "self loop");
  if (lower < 0 || upper < lower) {
    throw Error(Errc::kInvalidNetwork, "arc bounds violate 0 <= l <= u");
  }
  if (cost < 0) throw Error(Errc::kInvalidNetwork, "negative arc cost");
  const ArcId id = arcs_.size();
  if (!arc_index_.emplace(std::make_pair(from, to), id).second) {
    throw Error(Errc::kParallelArc,
                "parallel arc " + names_[from] + " -> " + names_[to]);
  }
  arcs_.push_back({from, to, lower, upper, cost});
  return id;
}

std::optional<NodeId> FlowNetwork::FindNode(const std::string& name) const {
  for (NodeId v = 0; v < names_.size(); ++v) {
    if (names_[v] == name) return v;
  }
  return std::nullopt;
}

std::optional<ArcId> FlowNetwork::FindArc(NodeId from, NodeId to) const {
  auto it = arc_index_.find({from, to});
  if (it == arc_index_.end()) return std::nullopt;
  return it->second;
}

bool FlowNetwork::HasZeroLowerBounds() const {
  for (const Arc& a : arcs_) {
    if (a.lower != 0) return false;
  }
  return true;
}

Count FlowNetwork::BalanceSum() const {
  Count sum = 0;
  for (Count b : balance_) sum += b;
  return sum;
}

bool CheckFeasible(const FlowNetwork& net, const Flow& flow) {
  if (flow.values.size() != net.arc_count()) return false;
  std::vector<Count> net_out(net.node_count(), 0);
  for (ArcId a = 0; a < net.arc_count(); ++a) {
    const Arc& arc = net.arc(a);
    const Count f = flow.values[a];
    if (f < arc.lower || f > arc.upper) return false;
    net_out[arc.from] += f;
    net_out[arc.to] -= f;
  }
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (net_out[v] != net.balance(v)) return false;
  }
  return true;
}

Count FlowCost(const FlowNetwork& net, const Flow& flow) {
  Count cost = 0;
  for (ArcId a = 0; a < net.arc_count(); ++a) {
    cost += net.arc(a).cost * flow.values.at(a);
  }
  return cost;
}

LowerBoundReduction EliminateLowerBounds(const FlowNetwork& net) {
  LowerBoundReduction out{FlowNetwork(), {}, 0};
  for (NodeId v = 0; v < net.node_count(); ++v) {
    out.network.AddNode(net.name(v), net.balance(v));
  }
  std::vector<Count> balance = net.balances();
  for (const Arc& a : net.arcs()) {
    out.network.AddArc(a.from, a.to, 0, a.upper - a.lower, a.cost);
    out.lower.push_back(a.lower);
    balance[a.from] -= a.lower;
    balance[a.to] += a.lower;
    out.offset += a.lower * a.cost;
  }
  for (NodeId v = 0; v < net.node_count(); ++v) {
    out.network.SetBalance(v, balance[v]);
  }
  return out;
}

Flow LowerBoundReduction::Restore(const Flow& reduced) const {
  Flow f = reduced;
  for (ArcId a = 0; a < f.values.size(); ++a) f.values[a] += lower.at(a);
  return f;
}

std::optional<ArcId> ChainRepresentation::LinkArc(ElementId x,
                                                  ElementId y) const {
  if (!in_node.at(y)) return std::nullopt;
  return network.FindArc(out_node.at(x), *in_node[y]);
}

ArcId ChainRepresentation::SplitArc(ElementId x) const {
  if (!in_node.at(x)) {
    throw Error(Errc::kInvalidNetwork, "the maximum has no in node");
  }
  return *network.FindArc(*in_node[x], out_node[x]);
}

ArcId ChainRepresentation::BottomArc(ElementId x) const {
  return *network.FindArc(out_node.at(x), bottom);
}

ChainRepresentation BuildChainRepresentation(const Policy& policy,
                                             std::size_t width) {
  const Poset& p = policy.poset();
  auto top = p.Maximum();
  if (!top) throw Error(Errc::kNoMaximum, "poset has no unique maximum");
  if (width != p.Width()) {
    throw Error(Errc::kWidthMismatch,
                "width " + std::to_string(width) + " given, poset width is " +
                    std::to_string(p.Width()));
  }

  ChainRepresentation rep;
  rep.maximum = *top;
  rep.width = width;
  rep.in_node.resize(p.size());
  rep.out_node.resize(p.size());
  FlowNetwork& net = rep.network;
  for (ElementId x = 0; x < p.size(); ++x) {
    if (x != *top) rep.in_node[x] = net.AddNode("in:" + p.label(x));
    rep.out_node[x] = net.AddNode("out:" + p.label(x));
  }
  rep.bottom = net.AddNode("bottom");
  net.SetBalance(rep.out_node[*top], static_cast<Count>(width));
  net.SetBalance(rep.bottom, -static_cast<Count>(width));

  for (ElementId x = 0; x < p.size(); ++x) {
    if (x == *top) continue;
    net.AddArc(*rep.in_node[x], rep.out_node[x], 1, 1, 0);
    rep.arc_info.push_back({ChainRepresentation::ArcKind::kSplit, x, x});
  }
  for (ElementId x = 0; x < p.size(); ++x) {
    for (ElementId y = 0; y < p.size(); ++y) {
      if (!p.Less(y, x)) continue;
      net.AddArc(rep.out_node[x], *rep.in_node[y], 0, 1, Omega(policy, x, y));
      rep.arc_info.push_back({ChainRepresentation::ArcKind::kLink, x, y});
    }
    net.AddArc(rep.out_node[x], rep.bottom, 0, 1, 0);
    rep.arc_info.push_back({ChainRepresentation::ArcKind::kBottom, x, x});
  }
  return rep;
}

void WriteNetwork(std::ostream& out, const FlowNetwork& net) {
  for (NodeId v = 0; v < net.node_count(); ++v) {
    out << net.name(v) << ' ' << net.balance(v) << '\n';
  }
  for (const Arc& a : net.arcs()) {
    out << net.name(a.from) << ' ' << net.name(a.to) << ' ' << a.lower << ' '
        << a.upper << ' ' << a.cost << '\n';
  }
}

FlowNetwork ReadNetwork(std::istream& in) {
  FlowNetwork net;
  std::map<std::string, NodeId> ids;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& what) {
      return Error(Errc::kParse,
                   "network line " + std::to_string(lineno) + ": " + what);
    };
    auto number = [&](const std::string& s) -> Count {
      try {
        std::size_t used = 0;
        Count v = std::stoll(s, &used);
        if (used != s.size()) throw fail("bad number '" + s + "'");
        return v;
      } catch (const std::logic_error&) {
        throw fail("bad number '" + s + "'");
      }
    };
    auto node = [&](const std::string& s) {
      auto it = ids.find(s);
      if (it == ids.end()) throw fail("unknown node '" + s + "'");
      return it->second;
    };
    if (tok.size() == 2) {
      if (net.arc_count() != 0) throw fail("node after arcs");
      if (ids.count(tok[0])) throw fail("duplicate node '" + tok[0] + "'");
      ids[tok[0]] = net.AddNode(tok[0], number(tok[1]));
    } else if (tok.size() == 5) {
      net.AddArc(node(tok[0]), node(tok[1]), number(tok[2]), number(tok[3]),
                 number(tok[4]));
    } else {
      throw fail("expected 2 or 5 fields");
    }
  }
  return net;
}

}  // namespace chainforge
