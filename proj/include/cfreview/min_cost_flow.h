// Copyright 2026 The cfreview Authors
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

// Minimum-cost maximum flow with integer capacities and costs.
//
// Primal-dual successive shortest paths: Dijkstra on reduced costs finds the
// next distance layer, then a blocking flow saturates every shortest path of
// that length at once. Initial potentials come from Bellman-Ford, so negative
// arc costs are fine as long as the network has no negative cycle.

#ifndef CFREVIEW_MIN_COST_FLOW_H_
#define CFREVIEW_MIN_COST_FLOW_H_

#include <cstdint>
#include <limits>
#include <vector>

namespace cfreview {

class MinCostFlow {
 public:
  using Flow = int64_t;
  using Cost = int64_t;
  static constexpr Flow kUnlimited = std::numeric_limits<Flow>::max();

  explicit MinCostFlow(int num_nodes);

  // Returns the arc index.
  int AddArc(int from, int to, Flow capacity, Cost unit_cost);

  struct Result {
    Flow flow = 0;
    Cost cost = 0;
  };
  // Sends as much flow as possible (up to `limit`) from source to sink at
  // minimum cost. Can be called once per object.
  Result Solve(int source, int sink, Flow limit = kUnlimited);

  Flow flow(int arc) const { return initial_cap_[arc / 2] - cap_[arc]; }
  int num_nodes() const { return static_cast<int>(head_.size()); }

 private:
  bool InitPotentials(int source);
  bool Dijkstra(int source, int sink);
  bool BuildLevels(int source, int sink);
  Flow Push(int v, int sink, Flow limit);

  std::vector<int> head_;
  std::vector<int> next_;
  std::vector<int> to_;
  std::vector<Flow> cap_;
  std::vector<Cost> cost_;
  std::vector<Flow> initial_cap_;

  std::vector<Cost> potential_;
  std::vector<Cost> dist_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace cfreview

#endif  // CFREVIEW_MIN_COST_FLOW_H_
