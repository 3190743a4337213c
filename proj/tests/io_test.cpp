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

#include <fstream>
#include <sstream>

#include "chainforge/ces.hpp"
#include "chainforge/io.hpp"
#include "support/test_support.hpp"

namespace chainforge {
namespace {

using testing::ErrorOf;

Policy Parse(const std::string& text) {
  std::istringstream in(text);
  return ReadPolicy(in);
}

std::string MessageOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

TEST_CASE("reading the example policy file") {
  std::ifstream in(CHAINFORGE_TEST_DATA "/example.policy");
  REQUIRE(in);
  const Policy policy = ReadPolicy(in);
  const Poset& p = policy.poset();
  CHECK(p.size() == 8);
  CHECK(p.CoverCount() == 10);
  CHECK(p.label(p.Maximum().value()) == "h");
  CHECK(policy.total_users() == 8);
}

TEST_CASE("policy syntax") {
  const Policy p = Parse(
      "# header comment\n"
      "elements: a b   # trailing comment\n"
      "  c\n"
      "covers: b>a\n"
      "users: b=4\r\n");
  CHECK(p.poset().size() == 3);
  CHECK(p.users(p.poset().id("a")) == 0);
  CHECK(p.users(p.poset().id("b")) == 4);
  CHECK(p.poset().Leq(p.poset().id("a"), p.poset().id("b")));
  CHECK(p.poset().MaximalElements().size() == 2);
}

TEST_CASE("policy errors carry line numbers") {
  CHECK(ErrorOf([] { Parse("elements: a b\ncovers: b>z\n"); }) ==
        Errc::kUnknownLabel);
  CHECK(MessageOf([] { Parse("elements: a b\ncovers: b>z\n"); })
            .find("line 2") != std::string::npos);
  CHECK(ErrorOf([] { Parse("elements: a a\n"); }) == Errc::kDuplicateLabel);
  CHECK(ErrorOf([] { Parse("elements: a=b\n"); }) == Errc::kInvalidLabel);
  CHECK(ErrorOf([] { Parse("covers: b>a\n"); }) == Errc::kParse);
  CHECK(ErrorOf([] { Parse("elements:\n"); }) == Errc::kEmptyPoset);
  CHECK(ErrorOf([] { Parse("a b\n"); }) == Errc::kParse);
  CHECK(ErrorOf([] { Parse("elements: a b\ncovers: b>a>b\n"); }) == Errc::kParse);
  CHECK(ErrorOf([] { Parse("elements: a\nusers: a=-1\n"); }) == Errc::kParse);
  CHECK(ErrorOf([] { Parse("elements: a\nusers: a=x\n"); }) == Errc::kParse);
  CHECK(ErrorOf([] { Parse("elements: a\nusers: a=1 a=2\n"); }) == Errc::kParse);
  CHECK(ErrorOf([] {
          Parse("elements: a\nusers: a=99999999999999999999999\n");
        }) == Errc::kOverflow);
  CHECK(ErrorOf([] { Parse("elements: a\nelements: b\n"); }) == Errc::kParse);
  CHECK(ErrorOf([] { Parse("elements: a b\ncovers: b>a a>b\n"); }) ==
        Errc::kCycleDetected);
  CHECK(ErrorOf([] { Parse("elements: a b c\ncovers: b>a c>b c>a\n"); }) ==
        Errc::kRedundantCover);
}

TEST_CASE("policy round trip") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const Policy policy = testing::RandomSmallPolicy(rng, 10);
    std::ostringstream first;
    WritePolicy(first, policy);
    const Policy back = Parse(first.str());
    std::ostringstream second;
    WritePolicy(second, back);
    CHECK(first.str() == second.str());
    CHECK(back.user_counts() == policy.user_counts());
    CHECK(back.poset().Covers() == policy.poset().Covers());
  }
}

TEST_CASE("partition files") {
  const Poset p = testing::ExamplePoset();
  std::istringstream in("h>f>d>b\n# comment\n\ng>e>c>a\n");
  const ChainPartition pi = ReadPartition(in, p);
  CHECK(pi.chain_count() == 2);
  std::ostringstream out;
  WritePartition(out, p, pi);
  CHECK(out.str() == "h>f>d>b\ng>e>c>a\n");

  auto read = [&](const std::string& text) {
    std::istringstream s(text);
    return ReadPartition(s, p);
  };
  CHECK(ErrorOf([&] { read("h>f>d>b\ng>e>c>z\n"); }) == Errc::kUnknownLabel);
  CHECK(ErrorOf([&] { read("b>d>f>h\ng>e>c>a\n"); }) == Errc::kInvalidPartition);
  CHECK(ErrorOf([&] { read("h>f>d>b\ng>e>c\n"); }) == Errc::kInvalidPartition);
  CHECK(ErrorOf([&] { read("h>f>d>b>\ng>e>c>a\n"); }) == Errc::kParse);
  CHECK(MessageOf([&] { read("h>f>d>b\ng>e>c>z\n"); }).find("line 2") !=
        std::string::npos);
}

TEST_CASE("bundle files") {
  const Policy policy = testing::ExamplePolicy();
  const Poset& p = policy.poset();
  const auto pi = testing::MakePartition(p, "g>e>c>a | h>f>d>b");
  SeededEntropy entropy({3});
  const KeyMaterial m = Setup(policy, pi, SchemeParams{}, entropy);
  const UserBundle bundle = IssueBundle(m, policy, p.id("h"));

  std::ostringstream out;
  WriteBundle(out, p, bundle);
  CHECK(out.str().rfind("bundle h\n", 0) == 0);
  std::istringstream in(out.str());
  const UserBundle back = ReadBundle(in, p, SchemeParams{});
  CHECK(back.label == bundle.label);
  CHECK(back.secrets == bundle.secrets);

  auto read = [&](const std::string& text) {
    std::istringstream s(text);
    return ReadBundle(s, p, SchemeParams{});
  };
  CHECK(ErrorOf([&] { read("h secret 00\n"); }) == Errc::kParse);
  CHECK(ErrorOf([&] { read("bundle z\n"); }) == Errc::kUnknownLabel);
  CHECK(ErrorOf([&] { read("bundle h\ng secret 00\n"); }) == Errc::kInvalidBundle);
  CHECK(ErrorOf([&] {
          read("bundle h\ng key " + m.keys[p.id("g")].Hex() + "\n");
        }) == Errc::kInvalidBundle);
}

}  // namespace
}  // namespace chainforge
