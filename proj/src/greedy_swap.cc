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

#include <algorithm>
#include <queue>
#include <tuple>
#include <vector>

#include "cfreview/errors.h"
#include "cfreview/heuristics.h"
#include "cfreview/review_graph.h"

namespace cfreview {
namespace {

// Candidate edge ordered by (weight desc, paper asc, agent asc).
struct Candidate {
  Weight weight;
  int paper;
  int agent;

  bool operator<(const Candidate& o) const {
    // std::priority_queue pops the largest element.
    return std::tie(weight, o.paper, o.agent) < std::tie(o.weight, paper, agent);
  }
};

class SwapSolver {
 public:
  SwapSolver(const ReviewInstance& instance, const SolveParams& params)
      : instance_(instance), params_(params), graph_(instance) {}

  // Seeds E' with `start`, rejecting overloads and cycles.
  void Seed(const Assignment& start) {
    for (const auto& e : start.edges()) {
      if (!instance_.IsQualified(e.agent, e.paper)) {
        throw ReviewError(FaultKind::kForeignEdge, "foreign edge in start assignment");
      }
      if (graph_.agent_load(e.agent) >= params_.c_reviewer ||
          graph_.paper_load(e.paper) >= params_.d_paper) {
        throw ReviewError(FaultKind::kInvalidArgument, "start assignment exceeds c or d");
      }
      if (graph_.ClosesCycle(e.agent, e.paper, params_.z)) {
        throw ReviewError(FaultKind::kInvalidArgument, "start assignment has a short cycle");
      }
      graph_.Add(e.agent, e.paper);
    }
  }

  Assignment Run(GreedySwapStats& st) {
    const auto edges = instance_.qualification_edges();
    std::vector<Candidate> all;
    all.reserve(edges.size());
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      const Weight w = params_.weighted ? instance_.edge_weight(e) : 1;
      all.push_back({w, edges[e].paper, edges[e].agent});
    }
    queue_ = std::priority_queue<Candidate>(std::less<Candidate>(), std::move(all));

    const long long limit =
        static_cast<long long>(instance_.num_papers()) * params_.d_paper;
    int next_deficit = 0;
    while (true) {
      while (next_deficit < instance_.num_papers() &&
             graph_.paper_load(next_deficit) >= params_.d_paper) {
        ++next_deficit;
      }
      if (next_deficit == instance_.num_papers()) break;
      if (st.iterations >= limit) {
        // Unreachable: every iteration adds one review.
        throw ReviewError(FaultKind::kSwapExhausted, "iteration bound exceeded")
            .WithIteration(st.iterations);
      }
      ++st.iterations;
      if (AddOne()) {
        ++st.additions;
        continue;
      }
      if (!Swap(next_deficit)) {
        throw ReviewError(FaultKind::kSwapExhausted,
                          "swap exhausted at paper " + instance_.paper_id(next_deficit))
            .WithPaper(next_deficit)
            .WithIteration(st.iterations - 1);
      }
      ++st.swaps;
      // Removing a review may have opened paths for rejected candidates.
      for (const auto& c : rejected_) queue_.push(c);
      rejected_.clear();
    }
    return graph_.ToAssignment();
  }

 private:
  // Case 1. Loads only ever grow, so full papers and agents drop out for
  // good; cycle-closing candidates wait in rejected_ until the next swap.
  bool AddOne() {
    while (!queue_.empty()) {
      const Candidate c = queue_.top();
      queue_.pop();
      if (graph_.paper_load(c.paper) >= params_.d_paper) continue;
      if (graph_.agent_load(c.agent) >= params_.c_reviewer) continue;
      if (graph_.Has(c.agent, c.paper)) continue;
      if (graph_.ClosesCycle(c.agent, c.paper, params_.z)) {
        rejected_.push_back(c);
        continue;
      }
      graph_.Add(c.agent, c.paper);
      return true;
    }
    return false;
  }

  // Case 2: find the first (p', a', a) such that replacing (a', p') with
  // (a', p) and (a, p') keeps the assignment z-cycle-free.
  bool Swap(int p) {
    const int reach = 2 * params_.z.z() - 1;
    // Donor candidates: qualified for p, not reviewing it, and (a', p) alone
    // closes no cycle. Removing (a', p') cannot change that, since a path
    // from p to a' never needs an edge leaving a'.
    std::vector<bool> donor(instance_.num_agents(), false);
    {
      const auto blocked = graph_.AgentsReachableFrom(p, reach);
      std::vector<bool> is_blocked(instance_.num_agents(), false);
      for (int a : blocked) is_blocked[a] = true;
      for (int a : instance_.qualified_agents(p)) {
        if (!is_blocked[a] && !graph_.Has(a, p)) donor[a] = true;
      }
    }
    for (int q = 0; q < instance_.num_papers(); ++q) {
      std::vector<int> donors;
      for (int a : graph_.reviewers_of(q)) {
        if (donor[a]) donors.push_back(a);
      }
      std::sort(donors.begin(), donors.end());
      for (int a_out : donors) {
        for (int a_in : instance_.qualified_agents(q)) {
          if (a_in == a_out || graph_.agent_load(a_in) >= params_.c_reviewer ||
              graph_.Has(a_in, q)) {
            continue;
          }
          if (TrySwap(p, q, a_out, a_in)) return true;
        }
      }
    }
    return false;
  }

  bool TrySwap(int p, int q, int a_out, int a_in) {
    graph_.Remove(a_out, q);
    if (!graph_.ClosesCycle(a_out, p, params_.z)) {
      graph_.Add(a_out, p);
      if (!graph_.ClosesCycle(a_in, q, params_.z)) {
        graph_.Add(a_in, q);
        return true;
      }
      graph_.Remove(a_out, p);
    }
    graph_.Add(a_out, q);
    return false;
  }

  const ReviewInstance& instance_;
  const SolveParams& params_;
  ReviewGraph graph_;
  std::priority_queue<Candidate> queue_;
  std::vector<Candidate> rejected_;
};

}  // namespace

namespace {

void CheckSwapParams(const ReviewInstance& instance, const SolveParams& params) {
  if (!params.z.bounded()) {
    throw ReviewError(FaultKind::kInvalidArgument, "greedy_swap needs a finite z");
  }
  if (params.c_reviewer < 0 || params.d_paper < 0) {
    throw ReviewError(FaultKind::kInvalidArgument, "c and d must be non-negative");
  }
  if (params.weighted && !instance.weighted()) {
    throw ReviewError(FaultKind::kNoWeights, "no weights: weighted mode on unweighted instance");
  }
}

}  // namespace

Assignment GreedySwap(const ReviewInstance& instance, const SolveParams& params,
                      GreedySwapStats* stats) {
  return GreedySwapFrom(instance, params, Assignment(), stats);
}

Assignment GreedySwapFrom(const ReviewInstance& instance, const SolveParams& params,
                          const Assignment& start, GreedySwapStats* stats) {
  CheckSwapParams(instance, params);
  GreedySwapStats local;
  GreedySwapStats& st = stats ? *stats : local;
  st = GreedySwapStats{};
  SwapSolver solver(instance, params);
  solver.Seed(start);
  return solver.Run(st);
}

}  // namespace cfreview
