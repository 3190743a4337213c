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

#include "chainforge/poset.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <utility>

#include "chainforge/error.hpp"

namespace chainforge {
namespace {

bool IsValidLabel(std::string_view label) {
  if (label.empty()) return false;
  for (char c : label) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
        c == '\f' || c == '>' || c == '=' || c == '#') {
      return false;
    }
  }
  return true;
}

std::vector<ElementId> BitsToIds(const boost::dynamic_bitset<>& bits) {
  std::vector<ElementId> ids;
  ids.reserve(bits.count());
  for (auto i = bits.find_first(); i != boost::dynamic_bitset<>::npos;
       i = bits.find_next(i)) {
    ids.push_back(i);
  }
  return ids;
}

// Kuhn's augmenting-path matching on the strict-order relation: left copy y
// is joined to right copy x whenever y < x.
std::size_t StrictOrderMatching(const Poset& p) {
  const std::size_t n = p.size();
  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> match_right(n, kFree);
  std::vector<char> visited(n);

  std::function<bool(ElementId)> augment = [&](ElementId y) -> bool {
    const auto& above = p.UpBits(y);
    for (auto x = above.find_first(); x != boost::dynamic_bitset<>::npos;
         x = above.find_next(x)) {
      if (x == y || visited[x]) continue;
      visited[x] = 1;
      if (match_right[x] == kFree || augment(match_right[x])) {
        match_right[x] = y;
        return true;
      }
    }
    return false;
  };

  std::size_t matched = 0;
  for (ElementId y = 0; y < n; ++y) {
    std::fill(visited.begin(), visited.end(), 0);
    if (augment(y)) ++matched;
  }
  return matched;
}

}  // namespace

Poset Poset::Build(std::vector<std::string> labels,
                   const std::vector<Cover>& covers) {
  Poset p;
  const std::size_t n = labels.size();
  for (ElementId i = 0; i < n; ++i) {
    if (!IsValidLabel(labels[i])) {
      throw Error(Errc::kInvalidLabel, "invalid label '" + labels[i] + "'");
    }
    if (!p.index_.emplace(labels[i], i).second) {
      throw Error(Errc::kDuplicateLabel, "duplicate label '" + labels[i] + "'");
    }
  }
  p.labels_ = std::move(labels);
  p.parents_.assign(n, {});
  p.children_.assign(n, {});

  std::set<std::pair<ElementId, ElementId>> seen;
  for (const auto& cover : covers) {
    const ElementId child = p.id(cover.child);
    const ElementId parent = p.id(cover.parent);
    if (child == parent) {
      throw Error(Errc::kCycleDetected,
                  "cycle detected at element '" + cover.child + "'");
    }
    if (!seen.emplace(child, parent).second) {
      throw Error(Errc::kRedundantCover, "cover " + cover.parent + ">" +
                                             cover.child + " declared twice");
    }
    p.parents_[child].push_back(parent);
    p.children_[parent].push_back(child);
  }
  p.cover_count_ = seen.size();
  for (auto& v : p.parents_) std::sort(v.begin(), v.end());
  for (auto& v : p.children_) std::sort(v.begin(), v.end());

  // Kahn's algorithm from the minimal elements upward, always taking the
  // smallest ready id so the extension is deterministic.
  std::vector<std::size_t> pending(n);
  std::set<ElementId> ready;
  for (ElementId x = 0; x < n; ++x) {
    pending[x] = p.children_[x].size();
    if (pending[x] == 0) ready.insert(x);
  }
  while (!ready.empty()) {
    const ElementId x = *ready.begin();
    ready.erase(ready.begin());
    p.linear_extension_.push_back(x);
    for (ElementId parent : p.parents_[x]) {
      if (--pending[parent] == 0) ready.insert(parent);
    }
  }
  if (p.linear_extension_.size() != n) {
    // Every unprocessed element has an unprocessed child; following children
    // must revisit something, and the first repeat lies on a cycle.
    ElementId x = 0;
    while (pending[x] == 0) ++x;
    std::vector<char> visited(n);
    while (!visited[x]) {
      visited[x] = 1;
      for (ElementId c : p.children_[x]) {
        if (pending[c] != 0) {
          x = c;
          break;
        }
      }
    }
    throw Error(Errc::kCycleDetected,
                "cycle detected through element '" + p.labels_[x] + "'");
  }

  p.up_.assign(n, boost::dynamic_bitset<>(n));
  for (auto it = p.linear_extension_.rbegin(); it != p.linear_extension_.rend();
       ++it) {
    const ElementId x = *it;
    p.up_[x].set(x);
    for (ElementId parent : p.parents_[x]) p.up_[x] |= p.up_[parent];
  }
  p.down_.assign(n, boost::dynamic_bitset<>(n));
  for (ElementId y = 0; y < n; ++y) {
    for (ElementId x : BitsToIds(p.up_[y])) p.down_[x].set(y);
  }

  for (ElementId child = 0; child < n; ++child) {
    for (ElementId parent : p.parents_[child]) {
      for (ElementId other : p.parents_[child]) {
        if (other != parent && p.up_[other][parent]) {
          throw Error(Errc::kRedundantCover,
                      "cover " + p.labels_[parent] + ">" + p.labels_[child] +
                          " is implied by " + p.labels_[parent] + ">...>" +
                          p.labels_[other] + ">" + p.labels_[child]);
        }
      }
    }
  }
  return p;
}

ElementId Poset::id(std::string_view label) const {
  auto found = find(label);
  if (!found) {
    throw Error(Errc::kUnknownLabel, "unknown label '" + std::string(label) + "'");
  }
  return *found;
}

std::optional<ElementId> Poset::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<ElementId> Poset::UpSet(ElementId x) const {
  return BitsToIds(up_.at(x));
}

std::vector<ElementId> Poset::DownSet(ElementId x) const {
  return BitsToIds(down_.at(x));
}

std::vector<Cover> Poset::Covers() const {
  std::vector<Cover> out;
  out.reserve(cover_count_);
  for (ElementId child = 0; child < size(); ++child) {
    for (ElementId parent : parents_[child]) {
      out.push_back({labels_[child], labels_[parent]});
    }
  }
  return out;
}

std::vector<ElementId> Poset::MaximalElements() const {
  std::vector<ElementId> out;
  for (ElementId x = 0; x < size(); ++x) {
    if (parents_[x].empty()) out.push_back(x);
  }
  return out;
}

std::vector<ElementId> Poset::MinimalElements() const {
  std::vector<ElementId> out;
  for (ElementId x = 0; x < size(); ++x) {
    if (children_[x].empty()) out.push_back(x);
  }
  return out;
}

std::optional<ElementId> Poset::Maximum() const {
  auto maximal = MaximalElements();
  if (maximal.size() != 1) return std::nullopt;
  return maximal.front();
}

std::size_t Poset::Width() const {
  if (empty()) throw Error(Errc::kEmptyPoset, "width of an empty poset");
  return size() - StrictOrderMatching(*this);
}

MaximumResult EnsureMaximum(const Poset& poset) {
  if (poset.empty()) {
    throw Error(Errc::kEmptyPoset, "cannot add a maximum to an empty poset");
  }
  if (auto top = poset.Maximum()) return {poset, *top, false};

  std::string fresh = "r";
  for (int suffix = 1; poset.find(fresh); ++suffix) {
    fresh = "r" + std::to_string(suffix);
  }
  std::vector<std::string> labels = poset.labels();
  labels.push_back(fresh);
  std::vector<Cover> covers = poset.Covers();
  for (ElementId m : poset.MaximalElements()) {
    covers.push_back({poset.label(m), fresh});
  }
  const ElementId top = labels.size() - 1;
  return {Poset::Build(std::move(labels), covers), top, true};
}

bool IsChainPartition(const Poset& poset,
                      const std::vector<std::vector<std::string>>& blocks) {
  std::vector<std::vector<ElementId>> ids;
  ids.reserve(blocks.size());
  for (const auto& block : blocks) {
    auto& out = ids.emplace_back();
    for (const auto& label : block) out.push_back(poset.id(label));
  }
  return IsChainPartition(poset, ids);
}

bool IsChainPartition(const Poset& poset,
                      const std::vector<std::vector<ElementId>>& blocks) {
  std::vector<char> used(poset.size());
  std::size_t total = 0;
  for (const auto& block : blocks) {
    if (block.empty()) return false;
    for (std::size_t i = 0; i < block.size(); ++i) {
      const ElementId x = block[i];
      if (x >= poset.size() || used[x]) return false;
      used[x] = 1;
      ++total;
      for (std::size_t j = 0; j < i; ++j) {
        if (!poset.Comparable(block[j], x)) return false;
      }
    }
  }
  return total == poset.size();
}

}  // namespace chainforge
