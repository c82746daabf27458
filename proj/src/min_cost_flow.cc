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

#include "cfreview/min_cost_flow.h"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>
#include <stdexcept>

namespace cfreview {
namespace {
constexpr MinCostFlow::Cost kInf = std::numeric_limits<MinCostFlow::Cost>::max() / 4;
}  // namespace

MinCostFlow::MinCostFlow(int num_nodes) : head_(num_nodes, -1) {}

int MinCostFlow::AddArc(int from, int to, Flow capacity, Cost unit_cost) {
  const int id = static_cast<int>(to_.size());
  to_.push_back(to);
  cap_.push_back(capacity);
  cost_.push_back(unit_cost);
  next_.push_back(head_[from]);
  head_[from] = id;
  to_.push_back(from);
  cap_.push_back(0);
  cost_.push_back(-unit_cost);
  next_.push_back(head_[to]);
  head_[to] = id + 1;
  initial_cap_.push_back(capacity);
  return id;
}

// Queue-based Bellman-Ford from the source. Unreachable nodes keep potential
// 0; they can never become reachable later, so their value is irrelevant.
bool MinCostFlow::InitPotentials(int source) {
  const int n = num_nodes();
  potential_.assign(n, kInf);
  std::vector<int> relax_count(n, 0);
  std::vector<bool> queued(n, false);
  std::deque<int> queue{source};
  potential_[source] = 0;
  queued[source] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    queued[v] = false;
    if (++relax_count[v] > n) return false;  // negative cycle
    for (int e = head_[v]; e >= 0; e = next_[e]) {
      if (cap_[e] == 0) continue;
      const Cost nd = potential_[v] + cost_[e];
      if (nd < potential_[to_[e]]) {
        potential_[to_[e]] = nd;
        if (!queued[to_[e]]) {
          queued[to_[e]] = true;
          queue.push_back(to_[e]);
        }
      }
    }
  }
  for (auto& p : potential_) {
    if (p == kInf) p = 0;
  }
  return true;
}

bool MinCostFlow::Dijkstra(int source, int sink) {
  const int n = num_nodes();
  dist_.assign(n, kInf);
  using Item = std::pair<Cost, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist_[source] = 0;
  heap.emplace(0, source);
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d != dist_[v]) continue;
    for (int e = head_[v]; e >= 0; e = next_[e]) {
      if (cap_[e] == 0) continue;
      const int w = to_[e];
      const Cost nd = d + cost_[e] + potential_[v] - potential_[w];
      if (nd < dist_[w]) {
        dist_[w] = nd;
        heap.emplace(nd, w);
      }
    }
  }
  if (dist_[sink] == kInf) return false;
  for (int v = 0; v < n; ++v) {
    if (dist_[v] != kInf) potential_[v] += dist_[v];
  }
  return true;
}

// BFS levels over admissible arcs (positive residual, zero reduced cost).
bool MinCostFlow::BuildLevels(int source, int sink) {
  level_.assign(num_nodes(), -1);
  std::vector<int> queue{source};
  level_[source] = 0;
  for (size_t i = 0; i < queue.size(); ++i) {
    const int v = queue[i];
    for (int e = head_[v]; e >= 0; e = next_[e]) {
      const int w = to_[e];
      if (cap_[e] == 0 || level_[w] >= 0 || dist_[w] == kInf) continue;
      if (cost_[e] + potential_[v] - potential_[w] != 0) continue;
      level_[w] = level_[v] + 1;
      queue.push_back(w);
    }
  }
  return level_[sink] >= 0;
}

MinCostFlow::Flow MinCostFlow::Push(int v, int sink, Flow limit) {
  if (v == sink) return limit;
  for (int& e = iter_[v]; e >= 0; e = next_[e]) {
    const int w = to_[e];
    if (cap_[e] == 0 || level_[w] != level_[v] + 1) continue;
    if (cost_[e] + potential_[v] - potential_[w] != 0) continue;
    const Flow pushed = Push(w, sink, std::min(limit, cap_[e]));
    if (pushed > 0) {
      cap_[e] -= pushed;
      cap_[e ^ 1] += pushed;
      return pushed;
    }
  }
  return 0;
}

MinCostFlow::Result MinCostFlow::Solve(int source, int sink, Flow limit) {
  Result result;
  if (source == sink || limit <= 0) return result;
  if (!InitPotentials(source)) {
    throw std::logic_error("min cost flow: negative cycle in input network");
  }
  while (result.flow < limit && Dijkstra(source, sink)) {
    while (result.flow < limit && BuildLevels(source, sink)) {
      iter_ = head_;
      Flow pushed;
      while (result.flow < limit &&
             (pushed = Push(source, sink, limit - result.flow)) > 0) {
        result.flow += pushed;
      }
    }
  }
  for (size_t arc = 0; arc < initial_cap_.size(); ++arc) {
    result.cost += flow(static_cast<int>(2 * arc)) * cost_[2 * arc];
  }
  return result;
}

}  // namespace cfreview
