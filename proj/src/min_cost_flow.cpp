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

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "chainforge/error.hpp"
#include "chainforge/flow_network.hpp"

namespace chainforge {
namespace {

constexpr Count kUnreachable = std::numeric_limits<Count>::max();

// Residual graph with a super source and super sink attached to the
// supply and demand nodes.
class SuccessiveShortestPaths {
 public:
  explicit SuccessiveShortestPaths(const FlowNetwork& net)
      : n_(net.node_count() + 2),
        source_(net.node_count()),
        sink_(net.node_count() + 1),
        adj_(n_) {
    for (const Arc& a : net.arcs()) {
      arc_edge_.push_back(AddEdge(a.from, a.to, a.upper, a.cost));
    }
    for (NodeId v = 0; v < net.node_count(); ++v) {
      const Count b = net.balance(v);
      if (b > 0) {
        AddEdge(source_, v, b, 0);
        demand_ += b;
      } else if (b < 0) {
        AddEdge(v, sink_, -b, 0);
      }
    }
  }

  // Returns the amount routed from source to sink.
  Count Run() {
    std::vector<Count> potential(n_, 0);
    std::vector<Count> dist(n_);
    std::vector<std::size_t> via(n_);
    Count sent = 0;
    while (sent < demand_) {
      if (!ShortestPaths(potential, dist, via)) break;
      const Count cap_to_sink = dist[sink_];
      for (NodeId v = 0; v < n_; ++v) {
        potential[v] += std::min(dist[v], cap_to_sink);
      }
      Count push = demand_ - sent;
      for (NodeId v = sink_; v != source_; v = edges_[via[v] ^ 1].to) {
        push = std::min(push, edges_[via[v]].cap);
      }
      for (NodeId v = sink_; v != source_; v = edges_[via[v] ^ 1].to) {
        edges_[via[v]].cap -= push;
        edges_[via[v] ^ 1].cap += push;
      }
      sent += push;
    }
    return sent;
  }

  Count demand() const { return demand_; }

  Flow ExtractFlow() const {
    Flow f;
    f.values.reserve(arc_edge_.size());
    // Flow on an arc is the residual capacity of its reverse edge.
    for (std::size_t e : arc_edge_) f.values.push_back(edges_[e ^ 1].cap);
    return f;
  }

 private:
  struct Edge {
    NodeId to;
    Count cap;
    Count cost;
  };

  std::size_t AddEdge(NodeId from, NodeId to, Count cap, Count cost) {
    const std::size_t id = edges_.size();
    edges_.push_back({to, cap, cost});
    edges_.push_back({from, 0, -cost});
    adj_[from].push_back(id);
    adj_[to].push_back(id + 1);
    return id;
  }

  // Dijkstra on reduced costs; ties pop the smaller node id first.
  bool ShortestPaths(const std::vector<Count>& potential,
                     std::vector<Count>& dist, std::vector<std::size_t>& via) {
    using Item = std::pair<Count, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    std::fill(dist.begin(), dist.end(), kUnreachable);
    dist[source_] = 0;
    heap.push({0, source_});
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      if (d != dist[v]) continue;
      for (std::size_t e : adj_[v]) {
        const Edge& edge = edges_[e];
        if (edge.cap == 0) continue;
        const Count next = d + edge.cost + potential[v] - potential[edge.to];
        if (next < dist[edge.to]) {
          dist[edge.to] = next;
          via[edge.to] = e;
          heap.push({next, edge.to});
        }
      }
    }
    return dist[sink_] != kUnreachable;
  }

  std::size_t n_;
  NodeId source_;
  NodeId sink_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> arc_edge_;
  Count demand_ = 0;
};

}  // namespace

Flow MinCostFlow(const FlowNetwork& net) {
  if (!net.HasZeroLowerBounds()) {
    throw Error(Errc::kInvalidNetwork,
                "solver needs zero lower bounds; eliminate them first");
  }
  if (net.BalanceSum() != 0) {
    throw Error(Errc::kInvalidNetwork, "node balances do not sum to zero");
  }
  SuccessiveShortestPaths solver(net);
  if (solver.Run() != solver.demand()) {
    throw Error(Errc::kInfeasible, "network admits no feasible flow");
  }
  return solver.ExtractFlow();
}

}  // namespace chainforge
