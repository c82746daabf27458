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

#include <cassert>
#include <limits>
#include <vector>

#include "cfreview/errors.h"
#include "cfreview/heuristics.h"

namespace cfreview {

Assignment GreedyDag(const ReviewInstance& instance, int d_paper, GreedyDagStats* stats) {
  if (d_paper < 0) {
    throw ReviewError(FaultKind::kInvalidArgument, "d_paper must be non-negative");
  }
  GreedyDagStats local;
  GreedyDagStats& st = stats ? *stats : local;
  st = GreedyDagStats{};

  const int n_agents = instance.num_agents();
  constexpr int kNotJoined = std::numeric_limits<int>::max();
  // Iteration at which an agent joined the pool; paperless agents join at 0
  // and authors join right after their first paper is served.
  std::vector<int> joined(n_agents, kNotJoined);
  std::vector<int> phi(n_agents, d_paper);

  int64_t seeded = 0;
  for (int a = 0; a < n_agents; ++a) {
    ++st.operations;
    if (instance.papers_of(a).empty()) {
      joined[a] = 0;
      ++seeded;
    }
  }
  const int64_t expected_sum = seeded * d_paper;
  int64_t pool_sum = expected_sum;  // sum of phi over the pool

  std::vector<ReviewEdge> edges;
  edges.reserve(static_cast<size_t>(instance.num_papers()) * d_paper);
  for (int p = 0; p < instance.num_papers(); ++p) {
    const int iteration = p + 1;
    ++st.operations;
    int bound = kNotJoined;
    for (int a : instance.authors_of(p)) {
      ++st.operations;
      bound = std::min(bound, joined[a]);
    }
    int taken = 0;
    for (int b : instance.qualified_agents(p)) {
      if (taken == d_paper) break;
      ++st.operations;
      if (joined[b] >= bound || joined[b] >= iteration || phi[b] == 0) continue;
      edges.push_back({b, p});
      --phi[b];
      --pool_sum;
      ++taken;
    }
    if (taken < d_paper) {
      throw ReviewError(FaultKind::kStuck,
                        "stuck at paper " + instance.paper_id(p) + " (iteration " +
                            std::to_string(p) + "): " + std::to_string(taken) + " of " +
                            std::to_string(d_paper) + " eligible reviewers")
          .WithPaper(p)
          .WithIteration(p);
    }
    for (int a : instance.authors_of(p)) {
      ++st.operations;
      if (joined[a] == kNotJoined) {
        joined[a] = iteration;
        pool_sum += d_paper;
      }
    }
    ++st.iterations;
    if (pool_sum != expected_sum) st.conservation_held = false;
  }
#ifndef NDEBUG
  {
    int64_t sum = 0;
    for (int a = 0; a < n_agents; ++a) {
      if (joined[a] != kNotJoined) sum += phi[a];
    }
    assert(sum == pool_sum);
  }
#endif
  return Assignment(std::move(edges));
}

}  // namespace cfreview
