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

#ifndef CHAINFORGE_POSET_HPP_
#define CHAINFORGE_POSET_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace chainforge {

// Index of an element in declaration order.
using ElementId = std::size_t;

// A Hasse diagram edge: `child` is covered by `parent`.
struct Cover {
  std::string child;
  std::string parent;

  bool operator==(const Cover&) const = default;
};

// A finite partially ordered set of labels, built from its Hasse diagram.
//
// Elements keep their declaration order and every set-valued query returns
// ids sorted by it. Reachability is materialised at build time as one bitset
// per element in each direction, so order queries are O(1) and up/down sets
// are O(|X|). Instances are immutable.
class Poset {
 public:
  // Labels must be unique, nonempty and free of whitespace and of the
  // characters '>', '=', '#' (reserved by the text formats). Every cover
  // endpoint must be declared. The covers must form an acyclic graph with no
  // edge implied by the others (a canonical Hasse diagram).
  //
  // Throws Error with kInvalidLabel, kDuplicateLabel, kUnknownLabel,
  // kCycleDetected or kRedundantCover.
  static Poset Build(std::vector<std::string> labels,
                     const std::vector<Cover>& covers);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(ElementId x) const { return labels_.at(x); }

  // Throws kUnknownLabel.
  ElementId id(std::string_view label) const;
  std::optional<ElementId> find(std::string_view label) const;

  // y <= x.
  bool Leq(ElementId y, ElementId x) const { return up_[y][x]; }
  // y < x.
  bool Less(ElementId y, ElementId x) const { return y != x && up_[y][x]; }
  bool Comparable(ElementId a, ElementId b) const {
    return up_[a][b] || up_[b][a];
  }

  // {y : y >= x}
  std::vector<ElementId> UpSet(ElementId x) const;
  // {y : y <= x}
  std::vector<ElementId> DownSet(ElementId x) const;
  std::size_t UpSetSize(ElementId x) const { return up_[x].count(); }
  std::size_t DownSetSize(ElementId x) const { return down_[x].count(); }
  const boost::dynamic_bitset<>& UpBits(ElementId x) const { return up_[x]; }
  const boost::dynamic_bitset<>& DownBits(ElementId x) const {
    return down_[x];
  }

  // Elements covering x / covered by x.
  const std::vector<ElementId>& parents(ElementId x) const {
    return parents_[x];
  }
  const std::vector<ElementId>& children(ElementId x) const {
    return children_[x];
  }

  std::size_t CoverCount() const { return cover_count_; }
  // Covers as label pairs, grouped by child in declaration order.
  std::vector<Cover> Covers() const;

  std::vector<ElementId> MaximalElements() const;
  std::vector<ElementId> MinimalElements() const;
  // The unique maximum, if the poset has one.
  std::optional<ElementId> Maximum() const;

  // Every element appears after all elements below it; ties are broken by
  // declaration order.
  const std::vector<ElementId>& LinearExtension() const {
    return linear_extension_;
  }

  // Size of a maximum antichain, computed as |X| minus a maximum matching in
  // the bipartite strict-order graph. Throws kEmptyPoset.
  std::size_t Width() const;

 private:
  Poset() = default;

  std::vector<std::string> labels_;
  std::unordered_map<std::string, ElementId> index_;
  std::vector<std::vector<ElementId>> parents_;
  std::vector<std::vector<ElementId>> children_;
  std::vector<boost::dynamic_bitset<>> up_;
  std::vector<boost::dynamic_bitset<>> down_;
  std::vector<ElementId> linear_extension_;
  std::size_t cover_count_ = 0;
};

struct MaximumResult {
  Poset poset;
  ElementId maximum;
  // True when a synthetic maximum was appended as the last element.
  bool added;
};

// Returns the poset unchanged when it already has a unique maximum; otherwise
// appends a fresh label ("r", or "r1", "r2", ... on collision) covering every
// maximal element. Throws kEmptyPoset.
MaximumResult EnsureMaximum(const Poset& poset);

// True iff the blocks are nonempty, pairwise disjoint, cover every element,
// and each block is totally ordered. Throws kUnknownLabel for undeclared
// labels.
bool IsChainPartition(const Poset& poset,
                      const std::vector<std::vector<std::string>>& blocks);
bool IsChainPartition(const Poset& poset,
                      const std::vector<std::vector<ElementId>>& blocks);

}  // namespace chainforge

#endif  // CHAINFORGE_POSET_HPP_
