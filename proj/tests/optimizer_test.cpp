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

#include "chainforge/brute_oracle.hpp"
#include "chainforge/flow_network.hpp"
#include "chainforge/metrics.hpp"
#include "chainforge/optimizer.hpp"
#include "support/test_support.hpp"

namespace chainforge {
namespace {

using testing::ErrorOf;
using testing::ExamplePolicy;
using testing::Ids;
using testing::MakePoset;

// Flow that selects the given out(x)->in(y) links plus every split arc and
// the bottom arcs of elements without a selected child.
Flow HandFlow(const Poset& p, const ChainRepresentation& rep,
              const std::string& links) {
  Flow f{std::vector<Count>(rep.network.arc_count(), 0)};
  std::vector<bool> has_child(p.size(), false);
  for (const Cover& c : testing::ParseCovers(links)) {
    const auto a = rep.LinkArc(p.id(c.parent), p.id(c.child));
    REQUIRE(a.has_value());
    f.values[*a] = 1;
    has_child[p.id(c.parent)] = true;
  }
  for (ElementId x = 0; x < p.size(); ++x) {
    if (x != rep.maximum) f.values[rep.SplitArc(x)] = 1;
    if (!has_child[x]) f.values[rep.BottomArc(x)] = 1;
  }
  return f;
}

Policy AntichainWithTop(std::size_t n) {
  std::string labels = "r";
  std::string covers;
  for (std::size_t i = 0; i < n; ++i) {
    labels += " x" + std::to_string(i);
    covers += " r>x" + std::to_string(i);
  }
  const Poset p = MakePoset(labels, covers);
  return Policy(p, std::vector<Count>(p.size(), 1));
}

Policy ChainPolicy(std::size_t n) {
  std::string labels;
  std::string covers;
  for (std::size_t i = 0; i < n; ++i) {
    labels += " c" + std::to_string(i);
    if (i > 0) {
      covers += " c" + std::to_string(i) + ">c" + std::to_string(i - 1);
    }
  }
  const Poset p = MakePoset(labels, covers);
  return Policy(p, std::vector<Count>(p.size(), 1));
}

TEST_CASE("extracting a partition from a hand-built flow") {
  const Policy policy = ExamplePolicy();
  const Poset& p = policy.poset();
  const auto rep = BuildChainRepresentation(policy, 2);
  const Flow f = HandFlow(p, rep, "c>a e>c g>e d>b f>d h>f h>g");
  REQUIRE(CheckFeasible(rep.network, f));
  const ChainPartition pi = ExtractPartitionFromFlow(policy, rep, f);
  CHECK(pi.chains() == std::vector<std::vector<ElementId>>{
                           Ids(p, "h f d b"), Ids(p, "g e c a")});
  CHECK(TotalKHat(policy, pi) == 13);
  CHECK(FlowCost(rep.network, f) == 11);
}

TEST_CASE("extracting from the singleton network") {
  const Policy single(MakePoset("r", ""), {4});
  const auto rep = BuildChainRepresentation(single, 1);
  const ChainPartition pi =
      ExtractPartitionFromFlow(single, rep, Flow{{1}});
  CHECK(pi.chains() == std::vector<std::vector<ElementId>>{{0}});
}

TEST_CASE("extraction rejects malformed and infeasible flows") {
  const Policy policy = ExamplePolicy();
  const Poset& p = policy.poset();
  const auto rep = BuildChainRepresentation(policy, 2);

  const Flow two_children = HandFlow(p, rep, "c>a e>c g>e g>c d>b f>d h>f h>g");
  CHECK(ErrorOf([&] { ExtractPartitionFromFlow(policy, rep, two_children); }) ==
        Errc::kMalformedFlow);
  const Flow no_parent = HandFlow(p, rep, "c>a e>c d>b f>d h>f h>g");
  CHECK(ErrorOf([&] { ExtractPartitionFromFlow(policy, rep, no_parent); }) ==
        Errc::kMalformedFlow);
  Flow doubled = HandFlow(p, rep, "c>a e>c g>e d>b f>d h>f h>g");
  doubled.values[rep.SplitArc(p.id("a"))] = 2;
  CHECK(ErrorOf([&] { ExtractPartitionFromFlow(policy, rep, doubled); }) ==
        Errc::kMalformedFlow);
  CHECK(ErrorOf([&] { ExtractPartitionFromFlow(policy, rep, Flow{{1}}); }) ==
        Errc::kMalformedFlow);

  Flow leaky = HandFlow(p, rep, "c>a e>c g>e d>b f>d h>f h>g");
  leaky.values[rep.BottomArc(p.id("a"))] = 0;
  CHECK(ErrorOf([&] { ExtractPartitionFromFlow(policy, rep, leaky); }) ==
        Errc::kNotAFeasibleFlow);
}

TEST_CASE("optimal partition of the example") {
  const Policy policy = ExamplePolicy();
  const auto result = OptimalPartition(policy);
  CHECK(result.khat == 13);
  CHECK(result.width == 2);
  CHECK(result.partition.chain_count() == 2);
  CHECK(result.kmax == 2);
  CHECK(result.flow_cost == 11);
  CHECK_FALSE(result.synthetic_maximum);
  CHECK(result.flow_cost + 2 * MaximumUsers(policy) == result.khat);
  CHECK(VerifyResult(policy, result));
  CHECK(MinKHatBrute(policy).min_khat == 13);
}

TEST_CASE("chains and antichains under a top") {
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto chain = OptimalPartition(ChainPolicy(n));
    CHECK(chain.khat == static_cast<Count>(n));
    CHECK(chain.partition.chain_count() == 1);
  }
  for (std::size_t n = 1; n <= 6; ++n) {
    const Policy policy = AntichainWithTop(n);
    const auto result = OptimalPartition(policy);
    CHECK(result.khat == static_cast<Count>(2 * n));
    CHECK(result.width == n);
    if (n <= 5) CHECK(MinKHatBrute(policy).min_khat == result.khat);
  }
}

TEST_CASE("verification rejects tampered results") {
  const Policy policy = ExamplePolicy();
  const auto result = OptimalPartition(policy);
  auto wrong_khat = result;
  wrong_khat.khat += 1;
  CHECK_FALSE(VerifyResult(policy, wrong_khat));

  auto too_many = result;
  too_many.partition =
      testing::MakePartition(policy.poset(), "h>f>d>b | g>e>c | a");
  too_many.khat = TotalKHat(policy, too_many.partition);
  CHECK_FALSE(VerifyResult(policy, too_many));
}

TEST_CASE("the top may join either chain") {
  const Policy policy = ExamplePolicy(3);
  const Poset& p = policy.poset();
  const auto left = testing::MakePartition(p, "h>f>d>b | g>e>c>a");
  const auto right = testing::MakePartition(p, "f>d>b | h>g>e>c>a");
  CHECK(TotalKHat(policy, left) == TotalKHat(policy, right));
  CHECK(KHatViaBottoms(policy, left) == KHatViaBottoms(policy, right));
}

TEST_CASE("results are reproducible") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Policy policy = testing::RandomSmallPolicy(rng, 12);
    const auto a = OptimalPartition(policy);
    const auto b = OptimalPartition(policy);
    CHECK(a.partition == b.partition);
    CHECK(a.khat == b.khat);
    CHECK(a.flow_cost == b.flow_cost);
  }
}

TEST_CASE("policies without a maximum") {
  const Policy pair(MakePoset("x y", ""), {2, 3});
  const auto result = OptimalPartition(pair);
  CHECK(result.synthetic_maximum);
  CHECK(result.width == 2);
  CHECK(result.partition.chain_count() == 2);
  CHECK(result.khat == 5);
  CHECK(VerifyResult(pair, result));

  const Policy no_top(MakePoset("a b c d e f g", "b>a c>a d>b d>c e>c f>d g>d g>e"),
                      std::vector<Count>(7, 1));
  const auto r = OptimalPartition(no_top);
  CHECK(r.synthetic_maximum);
  CHECK(r.khat == MinKHatBrute(no_top).min_khat);
  CHECK(VerifyResult(no_top, r));
}

TEST_CASE("property: optimizer matches exhaustive search") {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 300; ++trial) {
    const Policy policy = testing::RandomSmallPolicy(rng, 7);
    const auto result = OptimalPartition(policy);
    const auto oracle = MinKHatBrute(policy);
    CHECK(result.khat == oracle.min_khat);
    CHECK(result.partition.chain_count() == policy.poset().Width());
    CHECK(result.kmax <= result.width);
    CHECK(VerifyResult(policy, result));
  }
}

}  // namespace
}  // namespace chainforge
