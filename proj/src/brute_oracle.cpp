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

#include "chainforge/brute_oracle.hpp"

#include <algorithm>
#include <optional>

#include "chainforge/error.hpp"
#include "chainforge/metrics.hpp"

namespace chainforge {
namespace {

class Enumerator {
 public:
  Enumerator(const Poset& poset,
             const std::function<void(const ChainPartition&)>& visit)
      : poset_(poset), order_(poset.LinearExtension()), visit_(visit) {}

  std::size_t Run() {
    Place(0);
    return count_;
  }

 private:
  // chains_ hold elements bottom first while being built.
  void Place(std::size_t next) {
    if (next == order_.size()) {
      Emit();
      return;
    }
    const ElementId x = order_[next];
    for (std::size_t c = 0; c < chains_.size(); ++c) {
      if (!poset_.Less(chains_[c].back(), x)) continue;
      chains_[c].push_back(x);
      Place(next + 1);
      chains_[c].pop_back();
    }
    chains_.push_back({x});
    Place(next + 1);
    chains_.pop_back();
  }

  void Emit() {
    auto blocks = chains_;
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    ++count_;
    visit_(ChainPartition::FromBlocks(poset_, std::move(blocks)));
  }

  const Poset& poset_;
  const std::vector<ElementId>& order_;
  const std::function<void(const ChainPartition&)>& visit_;
  std::vector<std::vector<ElementId>> chains_;
  std::size_t count_ = 0;
};

}  // namespace

std::size_t ForEachChainPartition(
    const Poset& poset, const std::function<void(const ChainPartition&)>& visit,
    std::size_t limit) {
  if (poset.size() > limit) {
    throw Error(Errc::kTooLarge, "oracle limited to " + std::to_string(limit) +
                                     " elements, poset has " +
                                     std::to_string(poset.size()));
  }
  return Enumerator(poset, visit).Run();
}

OracleReport MinKHatBrute(const Policy& policy, std::size_t limit) {
  if (policy.poset().empty()) throw Error(Errc::kEmptyPoset, "empty policy");
  std::optional<OracleReport> best;
  const std::size_t examined = ForEachChainPartition(
      policy.poset(),
      [&](const ChainPartition& pi) {
        const Count khat = TotalKHat(policy, pi);
        if (!best || khat < best->min_khat) {
          best = OracleReport{khat, pi, 0, pi.chain_count()};
        } else if (khat == best->min_khat) {
          best->min_chain_count_at_min =
              std::min(best->min_chain_count_at_min, pi.chain_count());
        }
      },
      limit);
  best->partitions_examined = examined;
  return *best;
}

}  // namespace chainforge
