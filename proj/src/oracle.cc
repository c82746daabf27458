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

// Reference solver. Deliberately shares no search code with the solvers it
// checks: cycle tests are plain path searches and feasibility pruning uses a
// textbook augmenting-path max flow.

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

#include "cfreview/errors.h"
#include "cfreview/exact.h"

namespace cfreview {
namespace {

class Oracle {
 public:
  Oracle(const ReviewInstance& instance, const SolveParams& params, int64_t max_nodes)
      : inst_(instance),
        params_(params),
        max_nodes_(max_nodes),
        reviews_(instance.num_agents()),
        load_(instance.num_agents(), 0),
        got_(instance.num_papers(), 0),
        last_(instance.num_papers(), -1),
        paper_on_path_(instance.num_papers(), false) {
    if (params.weighted && !instance.weighted()) {
      throw ReviewError(FaultKind::kNoWeights, "no weights: weighted mode on unweighted instance");
    }
    if (params.z.bounded()) {
      max_edges_ = params.z.z() == 0 ? -1 : 2 * params.z.z() - 1;
    } else {
      max_edges_ = std::numeric_limits<int>::max();
    }
  }

  OracleResult Run() {
    Search();
    result_.nodes = nodes_;
    return result_;
  }

 private:
  Weight EdgeWeight(int a, int p) const {
    return params_.weighted ? inst_.edge_weight(*inst_.EdgeIndex(a, p)) : 1;
  }

  // Does `paper` reach `agent` within max_edges_ edges?
  bool Reaches(int paper, int agent, int budget) {
    if (budget < 1) return false;
    paper_on_path_[paper] = true;
    bool found = false;
    for (int b : inst_.authors_of(paper)) {
      if (b == agent) {
        found = true;
        break;
      }
      if (budget < 3) continue;
      for (int q : reviews_[b]) {
        if (paper_on_path_[q]) continue;
        if (Reaches(q, agent, budget - 2)) {
          found = true;
          break;
        }
      }
      if (found) break;
    }
    // Unbounded searches may keep the mark: a dead end stays a dead end.
    if (max_edges_ != std::numeric_limits<int>::max()) paper_on_path_[paper] = false;
    return found;
  }

  bool ClosesCycle(int agent, int paper) {
    if (max_edges_ < 0) return false;
    const bool r = Reaches(paper, agent, max_edges_);
    if (max_edges_ == std::numeric_limits<int>::max()) {
      std::fill(paper_on_path_.begin(), paper_on_path_.end(), false);
    }
    return r;
  }

  // Can the remaining needs be met using only `cand` edges? Plain
  // Edmonds-Karp on source -> agent -> paper -> sink.
  bool NeedsCoverable(const std::vector<std::vector<int>>& cand, int64_t total_need) {
    const int n_a = inst_.num_agents(), n_p = inst_.num_papers();
    const int n = n_a + n_p + 2, s = n - 2, t = n - 1;
    std::vector<std::vector<int>> adj(n);
    std::vector<int> to, cap;
    auto add = [&](int u, int v, int c) {
      adj[u].push_back(static_cast<int>(to.size()));
      to.push_back(v);
      cap.push_back(c);
      adj[v].push_back(static_cast<int>(to.size()));
      to.push_back(u);
      cap.push_back(0);
    };
    for (int a = 0; a < n_a; ++a) add(s, a, params_.c_reviewer - load_[a]);
    for (int p = 0; p < n_p; ++p) {
      add(n_a + p, t, params_.d_paper - got_[p]);
      for (int a : cand[p]) add(a, n_a + p, 1);
    }
    int64_t flow = 0;
    std::vector<int> via(n);
    while (flow < total_need) {
      std::fill(via.begin(), via.end(), -1);
      std::vector<int> queue{s};
      via[s] = -2;
      for (size_t i = 0; i < queue.size() && via[t] == -1; ++i) {
        for (int e : adj[queue[i]]) {
          if (cap[e] > 0 && via[to[e]] == -1) {
            via[to[e]] = e;
            queue.push_back(to[e]);
          }
        }
      }
      if (via[t] == -1) break;
      for (int v = t; v != s; v = to[via[v] ^ 1]) {
        --cap[via[v]];
        ++cap[via[v] ^ 1];
      }
      ++flow;
    }
    return flow >= total_need;
  }

  void Search() {
    if (++nodes_ > max_nodes_) {
      throw ReviewError(FaultKind::kOracleTooLarge, "instance too large for oracle");
    }
    const int n_p = inst_.num_papers();
    std::vector<std::vector<int>> cand(n_p);
    int pick = -1;
    int64_t total_need = 0;
    Weight bound = current_;
    for (int p = 0; p < n_p; ++p) {
      const int need = params_.d_paper - got_[p];
      if (need == 0) continue;
      total_need += need;
      std::vector<Weight> ws;
      for (int a : inst_.qualified_agents(p)) {
        if (a <= last_[p] || load_[a] >= params_.c_reviewer) continue;
        if (ClosesCycle(a, p)) continue;
        cand[p].push_back(a);
        ws.push_back(EdgeWeight(a, p));
      }
      if (static_cast<int>(cand[p].size()) < need) return;
      std::partial_sort(ws.begin(), ws.begin() + need, ws.end(), std::greater<>());
      for (int i = 0; i < need; ++i) bound += ws[i];
      if (pick < 0 || cand[p].size() < cand[pick].size()) pick = p;
    }
    if (pick < 0) {
      Leaf();
      return;
    }
    if (result_.feasible && bound <= result_.weight) return;
    if (!NeedsCoverable(cand, total_need)) return;

    const int p = pick;
    const int saved_last = last_[p];
    for (int a : cand[p]) {
      reviews_[a].push_back(p);
      ++load_[a];
      ++got_[p];
      last_[p] = a;
      const Weight w = EdgeWeight(a, p);
      current_ += w;
      Search();
      current_ -= w;
      last_[p] = saved_last;
      --got_[p];
      --load_[a];
      reviews_[a].pop_back();
    }
  }

  void Leaf() {
    if (result_.feasible && current_ <= result_.weight) return;
    std::vector<ReviewEdge> edges;
    for (int a = 0; a < inst_.num_agents(); ++a) {
      for (int p : reviews_[a]) edges.push_back({a, p});
    }
    Assignment assignment(std::move(edges));
    if (!CheckAssignment(inst_, assignment, params_).valid) {
      throw std::logic_error("oracle produced an invalid assignment");
    }
    if (max_edges_ >= 0 && FindReviewCycles(inst_, assignment, params_.z).has_cycle) {
      throw std::logic_error("oracle path test disagrees with cycle enumeration");
    }
    result_.feasible = true;
    result_.weight = current_;
    result_.witness = std::move(assignment);
  }

  const ReviewInstance& inst_;
  const SolveParams& params_;
  const int64_t max_nodes_;
  int max_edges_ = 0;
  std::vector<std::vector<int>> reviews_;
  std::vector<int> load_;
  std::vector<int> got_;
  std::vector<int> last_;
  std::vector<bool> paper_on_path_;
  Weight current_ = 0;
  int64_t nodes_ = 0;
  OracleResult result_;
};

}  // namespace

OracleResult BruteForceOracle(const ReviewInstance& instance, const SolveParams& params,
                              int64_t max_nodes) {
  if (params.c_reviewer < 0 || params.d_paper < 0) {
    throw ReviewError(FaultKind::kInvalidArgument, "c and d must be non-negative");
  }
  return Oracle(instance, params, max_nodes).Run();
}

}  // namespace cfreview
