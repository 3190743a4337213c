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

#include <doctest.h>

#include <random>
#include <sstream>

#include "chainforge/error.hpp"
#include "chainforge/flow_network.hpp"
#include "chainforge/metrics.hpp"
#include "support/test_support.hpp"

namespace chainforge {
namespace {

using testing::BruteMinCost;
using testing::ErrorOf;
using testing::ExamplePolicy;
using testing::MakePoset;

Count Outflow(const FlowNetwork& net, const Flow& f, NodeId v) {
  Count s = 0;
  for (ArcId a = 0; a < net.arc_count(); ++a) {
    if (net.arc(a).from == v) s += f[a];
  }
  return s;
}

Count Inflow(const FlowNetwork& net, const Flow& f, NodeId v) {
  Count s = 0;
  for (ArcId a = 0; a < net.arc_count(); ++a) {
    if (net.arc(a).to == v) s += f[a];
  }
  return s;
}

Flow SolveWithLowerBounds(const FlowNetwork& net, Count* cost) {
  const auto reduced = EliminateLowerBounds(net);
  const Flow shifted = MinCostFlow(reduced.network);
  const Flow f = reduced.Restore(shifted);
  if (cost) *cost = FlowCost(reduced.network, shifted) + reduced.offset;
  return f;
}

TEST_CASE("chain representation of the example") {
  const Policy policy = ExamplePolicy();
  const Poset& p = policy.poset();
  const auto rep = BuildChainRepresentation(policy, 2);
  const FlowNetwork& net = rep.network;
  CHECK(net.node_count() == 16);
  CHECK_FALSE(rep.in_node[p.id("h")].has_value());
  CHECK(net.balance(rep.out_node[p.id("h")]) == 2);
  CHECK(net.balance(rep.bottom) == -2);
  CHECK(net.BalanceSum() == 0);

  const auto link = rep.LinkArc(p.id("c"), p.id("a"));
  REQUIRE(link.has_value());
  const auto gamma = testing::BruteGamma(p, p.id("c"), p.id("a"));
  CHECK(net.arc(*link).cost == static_cast<Count>(gamma.size()));
  CHECK(net.arc(*link).cost == 2);
  CHECK_FALSE(rep.LinkArc(p.id("b"), p.id("e")).has_value());

  std::size_t splits = 0;
  for (ArcId a = 0; a < net.arc_count(); ++a) {
    const auto& info = rep.arc_info[a];
    const Arc& arc = net.arc(a);
    switch (info.kind) {
      case ChainRepresentation::ArcKind::kSplit:
        ++splits;
        CHECK(arc.lower == 1);
        CHECK(arc.upper == 1);
        CHECK(arc.cost == 0);
        break;
      case ChainRepresentation::ArcKind::kLink:
        CHECK(arc.lower == 0);
        CHECK(arc.upper == 1);
        CHECK(p.Less(info.to, info.from));
        CHECK(arc.cost == Omega(policy, info.from, info.to));
        break;
      case ChainRepresentation::ArcKind::kBottom:
        CHECK(arc.lower == 0);
        CHECK(arc.upper == 1);
        CHECK(arc.cost == 0);
        break;
    }
  }
  CHECK(splits == 7);
}

TEST_CASE("chain representation edge cases") {
  const Policy single(MakePoset("r", ""), {3});
  const auto rep = BuildChainRepresentation(single, 1);
  CHECK(rep.network.node_count() == 2);
  CHECK(rep.network.arc_count() == 1);
  CHECK(rep.network.balance(rep.out_node[0]) == 1);
  CHECK(rep.network.arc(0).to == rep.bottom);

  CHECK(ErrorOf([&] { BuildChainRepresentation(ExamplePolicy(), 3); }) ==
        Errc::kWidthMismatch);
  const Policy no_top(MakePoset("x y", ""));
  CHECK(ErrorOf([&] { BuildChainRepresentation(no_top, 2); }) ==
        Errc::kNoMaximum);
}

TEST_CASE("network construction rejects bad arcs") {
  FlowNetwork net;
  const NodeId a = net.AddNode("a");
  const NodeId b = net.AddNode("b");
  net.AddArc(a, b, 0, 1, 0);
  CHECK(ErrorOf([&] { net.AddArc(a, b, 0, 2, 1); }) == Errc::kParallelArc);
  CHECK(ErrorOf([&] { net.AddArc(a, a, 0, 1, 0); }) == Errc::kInvalidNetwork);
  CHECK(ErrorOf([&] { net.AddArc(b, a, 2, 1, 0); }) == Errc::kInvalidNetwork);
  CHECK(ErrorOf([&] { net.AddArc(b, a, 0, 1, -1); }) == Errc::kInvalidNetwork);
  CHECK(ErrorOf([&] { net.AddArc(b, 7, 0, 1, 0); }) == Errc::kInvalidNetwork);
}

TEST_CASE("eliminating lower bounds") {
  const Policy policy = ExamplePolicy();
  const Poset& p = policy.poset();
  const auto rep = BuildChainRepresentation(policy, 2);
  const auto reduced = EliminateLowerBounds(rep.network);
  CHECK(reduced.offset == 0);
  CHECK(reduced.network.HasZeroLowerBounds());
  CHECK(reduced.network.balance(*rep.in_node[p.id("a")]) == -1);
  CHECK(reduced.network.balance(rep.out_node[p.id("a")]) == 1);
  CHECK(reduced.network.BalanceSum() == 0);
  CHECK(reduced.network.arc(rep.SplitArc(p.id("a"))).upper == 0);

  FlowNetwork plain;
  plain.AddNode("s", 1);
  plain.AddNode("t", -1);
  plain.AddArc(0, 1, 0, 3, 4);
  const auto same = EliminateLowerBounds(plain);
  CHECK(same.offset == 0);
  CHECK(same.network.balances() == plain.balances());
  CHECK(same.network.arc(0).upper == 3);

  FlowNetwork costly;
  costly.AddNode("s", 0);
  costly.AddNode("t", 0);
  costly.AddArc(0, 1, 2, 3, 5);
  costly.AddArc(1, 0, 0, 3, 1);
  const auto shifted = EliminateLowerBounds(costly);
  CHECK(shifted.offset == 10);
  Count cost = 0;
  const Flow f = SolveWithLowerBounds(costly, &cost);
  CHECK(CheckFeasible(costly, f));
  CHECK(cost == FlowCost(costly, f));
  CHECK(cost == 12);
  CHECK(BruteMinCost(costly) == 12);
}

TEST_CASE("solver on the example and trivial networks") {
  const auto rep = BuildChainRepresentation(ExamplePolicy(), 2);
  Count cost = 0;
  const Flow f = SolveWithLowerBounds(rep.network, &cost);
  CHECK(cost == 11);
  CHECK(CheckFeasible(rep.network, f));

  FlowNetwork idle;
  idle.AddNode();
  idle.AddNode();
  idle.AddArc(0, 1, 0, 5, 0);
  idle.AddArc(1, 0, 0, 5, 0);
  const Flow zero = MinCostFlow(idle);
  CHECK(zero.values == std::vector<Count>{0, 0});
  CHECK(FlowCost(idle, zero) == 0);

  FlowNetwork cut;
  const NodeId s = cut.AddNode("s", 1);
  const NodeId m = cut.AddNode("m");
  const NodeId t = cut.AddNode("t", -1);
  cut.AddArc(s, m, 0, 1, 1);
  cut.AddArc(t, m, 0, 1, 1);
  CHECK(ErrorOf([&] { MinCostFlow(cut); }) == Errc::kInfeasible);

  CHECK(ErrorOf([&] { MinCostFlow(rep.network); }) == Errc::kInvalidNetwork);
  FlowNetwork unbalanced;
  unbalanced.AddNode("s", 1);
  CHECK(ErrorOf([&] { MinCostFlow(unbalanced); }) == Errc::kInvalidNetwork);
}

TEST_CASE("feasibility checks") {
  const auto rep = BuildChainRepresentation(ExamplePolicy(), 2);
  const Flow solved = SolveWithLowerBounds(rep.network, nullptr);
  CHECK(CheckFeasible(rep.network, solved));

  Flow zero{std::vector<Count>(rep.network.arc_count(), 0)};
  CHECK_FALSE(CheckFeasible(rep.network, zero));

  Flow over = solved;
  for (ArcId a = 0; a < over.values.size(); ++a) {
    if (over.values[a] == 1) {
      over.values[a] = 2;
      break;
    }
  }
  CHECK_FALSE(CheckFeasible(rep.network, over));
  CHECK_FALSE(CheckFeasible(rep.network, Flow{{1, 0}}));
}

TEST_CASE("property: solver matches exhaustive search on small networks") {
  std::mt19937_64 rng(99);
  int feasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const FlowNetwork net = testing::RandomNetwork(rng, 12);
    REQUIRE(net.arc_count() <= 12);
    const auto brute = BruteMinCost(net);
    if (!brute) {
      CHECK(ErrorOf([&] { MinCostFlow(net); }) == Errc::kInfeasible);
      continue;
    }
    ++feasible;
    const Flow f = MinCostFlow(net);
    CHECK(CheckFeasible(net, f));
    CHECK(FlowCost(net, f) == *brute);
  }
  CHECK(feasible > 100);
}

TEST_CASE("property: lower-bound round trip preserves optimal cost") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Count> coin(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const FlowNetwork base = testing::RandomNetwork(rng, 8, 2);
    FlowNetwork net;
    for (NodeId v = 0; v < base.node_count(); ++v) {
      net.AddNode(base.name(v), base.balance(v));
    }
    for (const Arc& a : base.arcs()) {
      const Count lower = a.upper > 0 ? coin(rng) : 0;
      net.AddArc(a.from, a.to, lower, a.upper, a.cost);
    }
    const auto brute = BruteMinCost(net);
    if (!brute) {
      CHECK_THROWS_AS(SolveWithLowerBounds(net, nullptr), Error);
      continue;
    }
    Count cost = 0;
    const Flow f = SolveWithLowerBounds(net, &cost);
    CHECK(CheckFeasible(net, f));
    CHECK(cost == FlowCost(net, f));
    CHECK(cost == *brute);
  }
}

TEST_CASE("property: chain-representation flows are 0/1 with the right degrees") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 150; ++trial) {
    const Policy policy = testing::RandomSmallPolicy(rng, 9).EnsureMaximum().policy;
    const std::size_t w = policy.poset().Width();
    const auto rep = BuildChainRepresentation(policy, w);
    CHECK(rep.network.node_count() == 2 * policy.poset().size());
    const Flow f = SolveWithLowerBounds(rep.network, nullptr);
    CHECK(CheckFeasible(rep.network, f));
    for (Count v : f.values) CHECK((v == 0 || v == 1));
    for (ElementId x = 0; x < policy.poset().size(); ++x) {
      if (x != rep.maximum) CHECK(f[rep.SplitArc(x)] == 1);
    }
    CHECK(Outflow(rep.network, f, rep.out_node[rep.maximum]) ==
          static_cast<Count>(w));
    CHECK(Inflow(rep.network, f, rep.bottom) == static_cast<Count>(w));
  }
}

TEST_CASE("network dump round trip") {
  const auto rep = BuildChainRepresentation(ExamplePolicy(), 2);
  std::ostringstream first;
  WriteNetwork(first, rep.network);
  CHECK(first.str().find("out:c in:a 0 1 2\n") != std::string::npos);
  CHECK(first.str().find("in:a out:a 1 1 0\n") != std::string::npos);
  CHECK(first.str().find("bottom -2\n") != std::string::npos);
  std::istringstream in(first.str());
  const FlowNetwork back = ReadNetwork(in);
  std::ostringstream second;
  WriteNetwork(second, back);
  CHECK(first.str() == second.str());

  std::istringstream bad("a 1\nb -1\na c 0 1 0\n");
  CHECK(ErrorOf([&] { ReadNetwork(bad); }) == Errc::kParse);
}

}  // namespace
}  // namespace chainforge
