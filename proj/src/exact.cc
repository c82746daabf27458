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

#include "cfreview/exact.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <map>
#include <queue>

#include "cfreview/errors.h"
#include "cfreview/heuristics.h"
#include "cfreview/min_cost_flow.h"
#include "json.hpp"

namespace cfreview {
namespace {

using Clock = std::chrono::steady_clock;

std::vector<Weight> ObjectiveWeights(const ReviewInstance& instance,
                                     const SolveParams& params) {
  if (params.weighted && !instance.weighted()) {
    throw ReviewError(FaultKind::kNoWeights, "no weights: weighted mode on unweighted instance");
  }
  std::vector<Weight> w(instance.num_qualification_edges(), 1);
  if (params.weighted) {
    for (int e = 0; e < instance.num_qualification_edges(); ++e) w[e] = instance.edge_weight(e);
  }
  return w;
}

void CheckParams(const SolveParams& params) {
  if (params.c_reviewer < 0 || params.d_paper < 0) {
    throw ReviewError(FaultKind::kInvalidArgument, "c and d must be non-negative");
  }
}

struct Relaxation {
  bool feasible = false;
  Weight value = 0;
  std::vector<ReviewEdge> edges;
};

// Flow relaxation with edges fixed in or out. `state[e]` is 0 free, 1 forced
// in, -1 forced out.
Relaxation SolveRelaxation(const ReviewInstance& instance, const std::vector<Weight>& w,
                           const SolveParams& params, const std::vector<int8_t>& state) {
  Relaxation out;
  const int n_a = instance.num_agents(), n_p = instance.num_papers();
  std::vector<int64_t> agent_cap(n_a, params.c_reviewer);
  std::vector<int64_t> paper_need(n_p, params.d_paper);
  const auto edges = instance.qualification_edges();
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    if (state[e] != 1) continue;
    out.value += w[e];
    out.edges.push_back(edges[e]);
    if (--agent_cap[edges[e].agent] < 0 || --paper_need[edges[e].paper] < 0) return out;
  }
  const int source = 0, sink = n_a + n_p + 1;
  MinCostFlow flow(n_a + n_p + 2);
  for (int a = 0; a < n_a; ++a) flow.AddArc(source, 1 + a, agent_cap[a], 0);
  int64_t demand = 0;
  for (int p = 0; p < n_p; ++p) {
    flow.AddArc(1 + n_a + p, sink, paper_need[p], 0);
    demand += paper_need[p];
  }
  std::vector<std::pair<int, int>> arcs;  // (arc, edge)
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    if (state[e] != 0) continue;
    arcs.emplace_back(flow.AddArc(1 + edges[e].agent, 1 + n_a + edges[e].paper, 1, -w[e]), e);
  }
  const auto result = flow.Solve(source, sink, demand);
  if (result.flow < demand) return out;
  out.feasible = true;
  out.value -= result.cost;
  for (const auto& [arc, e] : arcs) {
    if (flow.flow(arc) > 0) out.edges.push_back(edges[e]);
  }
  return out;
}

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

}  // namespace

const char* SolveStatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kFeasibleOnly:
      return "feasible-only";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kNoSolutionWithinLimits:
      return "no-solution-within-limits";
  }
  return "unknown";
}

SolveResult MaxWeightAssignment(const ReviewInstance& instance, const SolveParams& params) {
  CheckParams(params);
  const auto start = Clock::now();
  const auto w = ObjectiveWeights(instance, params);
  SolveResult result;
  auto relax = SolveRelaxation(instance, w, params,
                               std::vector<int8_t>(instance.num_qualification_edges(), 0));
  result.stats.nodes = 1;
  result.stats.flow_solves = 1;
  if (relax.feasible) {
    result.assignment = Assignment(std::move(relax.edges));
    result.stats.status = SolveStatus::kOptimal;
    result.stats.objective = relax.value;
    result.stats.bound = relax.value;
  } else {
    result.stats.status = SolveStatus::kInfeasible;
  }
  result.stats.wall_seconds = Seconds(start);
  return result;
}

namespace {

constexpr Weight kNoBound = std::numeric_limits<Weight>::max();
constexpr size_t kCyclesPerRound = 64;

Weight FloorDiv(Weight a, Weight b) {
  Weight q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Best-first branch and bound over the flow relaxation. Violated review
// cycles are collected into a pool of constraints "not all of these edges";
// each node bounds its subproblem by a Lagrangian relaxation of the pooled
// constraints (again a flow problem) and branches on one constraint
// C = {f_1..f_m} into the m children "f_1..f_{i-1} in, f_i out".
class BranchAndBound {
 public:
  BranchAndBound(const ReviewInstance& instance, const SolveParams& params,
                 const SearchLimits& limits)
      : instance_(instance),
        params_(params),
        limits_(limits),
        weights_(ObjectiveWeights(instance, params)),
        constraints_of_edge_(instance.num_qualification_edges()),
        edges_of_agent_(instance.num_agents()),
        edges_of_paper_(instance.num_papers()) {
    const auto edges = instance.qualification_edges();
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      edges_of_agent_[edges[e].agent].push_back(e);
      edges_of_paper_[edges[e].paper].push_back(e);
    }
    Weight max_w = 1;
    for (Weight w : weights_) max_w = std::max(max_w, w < 0 ? -w : w);
    // Multipliers are integers in units of 1/scale_ of a weight.
    scale_ = std::max<Weight>(1, (Weight{1} << 20) / max_w);
  }

  SolveResult Run() {
    start_ = Clock::now();
    queue_.push({kNoBound, seq_++, {}, {}});
    bool exhausted = false;
    while (!queue_.empty()) {
      if (result_.stats.nodes >= limits_.max_nodes || TimeUp()) {
        exhausted = true;
        break;
      }
      Node node = queue_.top();
      queue_.pop();
      if (incumbent_ && node.bound <= *incumbent_) continue;
      if (!Expand(std::move(node))) {
        exhausted = true;
        break;
      }
    }
    Finish(exhausted);
    return std::move(result_);
  }

 private:
  struct Node {
    Weight bound;  // upper bound inherited from the parent
    int64_t seq;
    std::vector<int> forced_in;
    std::vector<int> forced_out;

    bool operator<(const Node& o) const {
      if (bound != o.bound) return bound < o.bound;
      return seq < o.seq;  // newest first among equal bounds: dives for an incumbent
    }
  };

  bool TimeUp() const { return Seconds(start_) >= limits_.max_seconds; }

  Weight TrueValue(const Assignment& x) const {
    Weight v = 0;
    for (const auto& e : x.edges()) v += weights_[*instance_.EdgeIndex(e.agent, e.paper)];
    return v;
  }

  void Offer(Assignment assignment, Weight value) {
    if (incumbent_ && value <= *incumbent_) return;
    incumbent_ = value;
    best_ = std::move(assignment);
  }

  void SeedIncumbent() {
    seeded_ = true;
    try {
      Assignment greedy = GreedySwap(instance_, params_);
      const Weight value = TrueValue(greedy);
      Offer(std::move(greedy), value);
    } catch (const ReviewError& e) {
      if (e.kind() != FaultKind::kSwapExhausted) throw;
    }
  }

  // Drops the lightest edge of every short cycle until none is left, then
  // completes the remainder greedily.
  void Repair(Assignment x) {
    while (true) {
      const CycleReport report = FindReviewCycles(instance_, x, params_.z);
      if (!report.has_cycle) break;
      std::vector<ReviewEdge> drop;
      for (const auto& cycle : report.cycles) {
        int pick = -1;
        for (const auto& e : cycle.ReviewEdges()) {
          const int idx = *instance_.EdgeIndex(e.agent, e.paper);
          if (pick < 0 || weights_[idx] < weights_[pick]) pick = idx;
        }
        drop.push_back(instance_.qualification_edges()[pick]);
      }
      std::sort(drop.begin(), drop.end());
      std::vector<ReviewEdge> keep;
      for (const auto& e : x.edges()) {
        if (!std::binary_search(drop.begin(), drop.end(), e)) keep.push_back(e);
      }
      x = Assignment(std::move(keep));
    }
    try {
      Assignment repaired = GreedySwapFrom(instance_, params_, x);
      const Weight value = TrueValue(repaired);
      Offer(std::move(repaired), value);
    } catch (const ReviewError& e) {
      if (e.kind() != FaultKind::kSwapExhausted) throw;
    }
  }

  // Index of the pool constraint for `cycle`, adding it when new.
  int Record(const ReviewCycle& cycle) {
    std::vector<int> key;
    for (const auto& e : cycle.ReviewEdges()) key.push_back(*instance_.EdgeIndex(e.agent, e.paper));
    const auto [it, fresh] = pool_index_.emplace(key, static_cast<int>(pool_.size()));
    if (!fresh) return it->second;
    for (int e : key) constraints_of_edge_[e].push_back(static_cast<int>(pool_.size()));
    pool_.push_back(std::move(key));
    lambda_.push_back(0);
    result_.constraints.push_back(cycle);
    return it->second;
  }

  enum class Status { kActive, kResolved, kViolated, kUnit };

  // kResolved: some edge forced out. kViolated: all edges forced in. kUnit:
  // exactly one free edge left, the rest forced in.
  Status Classify(int id, const std::vector<int8_t>& state, int* free_edge) const {
    int free = 0;
    for (int e : pool_[id]) {
      if (state[e] == -1) return Status::kResolved;
      if (state[e] == 0) {
        ++free;
        *free_edge = e;
      }
    }
    if (free == 0) return Status::kViolated;
    return free == 1 ? Status::kUnit : Status::kActive;
  }

  // Applies unit propagation from the forced-in edges; false on conflict.
  bool Propagate(std::vector<int8_t>& state, std::vector<int>& forced_out,
                 const std::vector<int>& forced_in) const {
    for (int e : forced_in) {
      for (int id : constraints_of_edge_[e]) {
        int free_edge = -1;
        switch (Classify(id, state, &free_edge)) {
          case Status::kViolated:
            return false;
          case Status::kUnit:
            state[free_edge] = -1;
            forced_out.push_back(free_edge);
            break;
          default:
            break;
        }
      }
    }
    return true;
  }

  // A free edge of the paper with the fewest spare candidates, preferring
  // one the relaxation used; -1 when every paper is settled.
  int FeasibilityBranchEdge(const std::vector<int8_t>& state, const std::vector<bool>& in_x) const {
    int best = -1, best_slack = 0;
    for (int p = 0; p < instance_.num_papers(); ++p) {
      int in = 0, open = 0, pick = -1;
      for (int e : edges_of_paper_[p]) {
        in += state[e] == 1;
        if (state[e] != 0) continue;
        ++open;
        if (pick < 0 || (in_x[e] && !in_x[pick])) pick = e;
      }
      if (open == 0 || in >= params_.d_paper) continue;
      const int slack = open - (params_.d_paper - in);
      if (best < 0 || slack < best_slack) {
        best = pick;
        best_slack = slack;
      }
    }
    return best;
  }

  // Fixes edges implied by the forced ones, to a fixpoint: an agent at its
  // load cap or a paper with d reviews loses its free edges, a paper with
  // exactly d candidates left takes all of them, and a free edge that would
  // close a short cycle through forced-in edges is dropped. False on conflict.
  bool Tighten(std::vector<int8_t>& state, Node& node) const {
    const auto edges = instance_.qualification_edges();
    const int c = params_.c_reviewer, d = params_.d_paper;
    const int reach = params_.z.z() >= 1 ? 2 * params_.z.z() - 1 : 0;
    auto force = [&](int e, int8_t to) {
      state[e] = to;
      (to == 1 ? node.forced_in : node.forced_out).push_back(e);
    };
    std::vector<int> dist(instance_.num_agents(), -1);
    std::vector<int> frontier, next, seen;
    for (bool changed = true; changed;) {
      changed = false;
      for (int a = 0; a < instance_.num_agents(); ++a) {
        int in = 0;
        for (int e : edges_of_agent_[a]) in += state[e] == 1;
        if (in > c) return false;
        if (in < c) continue;
        for (int e : edges_of_agent_[a]) {
          if (state[e] == 0) {
            force(e, -1);
            changed = true;
          }
        }
      }
      for (int p = 0; p < instance_.num_papers(); ++p) {
        int in = 0, open = 0;
        for (int e : edges_of_paper_[p]) {
          in += state[e] == 1;
          open += state[e] == 0;
        }
        if (in > d || in + open < d) return false;
        if (open == 0 || (in < d && in + open > d)) continue;
        for (int e : edges_of_paper_[p]) {
          if (state[e] == 0) {
            force(e, in == d ? -1 : 1);
            changed = true;
          }
        }
      }
      if (reach == 0 || node.forced_in.empty()) continue;
      // Agents reachable from each paper along authorship and forced-in
      // review edges within `reach` steps.
      for (int p = 0; p < instance_.num_papers(); ++p) {
        bool relevant = false;
        for (int e : edges_of_paper_[p]) relevant |= state[e] >= 0;
        if (!relevant) continue;
        frontier.clear();
        for (int b : instance_.authors_of(p)) {
          if (dist[b] < 0) {
            dist[b] = 1;
            frontier.push_back(b);
            seen.push_back(b);
          }
        }
        for (int steps = 3; steps <= reach && !frontier.empty(); steps += 2) {
          next.clear();
          for (int b : frontier) {
            for (int e : edges_of_agent_[b]) {
              if (state[e] != 1) continue;
              for (int b2 : instance_.authors_of(edges[e].paper)) {
                if (dist[b2] >= 0) continue;
                dist[b2] = steps;
                next.push_back(b2);
                seen.push_back(b2);
              }
            }
          }
          frontier.swap(next);
        }
        bool conflict = false;
        for (int e : edges_of_paper_[p]) {
          if (dist[edges[e].agent] < 0) continue;
          if (state[e] == 1) conflict = true;
          if (state[e] == 0) {
            force(e, -1);
            changed = true;
          }
        }
        for (int b : seen) dist[b] = -1;
        seen.clear();
        if (conflict) return false;
      }
    }
    return true;
  }

  // Returns false when the budget ran out inside the node; the node is then
  // queued again with its current bound.
  bool Expand(Node node) {
    ++result_.stats.nodes;
    const int num_edges = instance_.num_qualification_edges();
    std::vector<int8_t> state(num_edges, 0);
    for (int e : node.forced_in) state[e] = 1;
    for (int e : node.forced_out) state[e] = -1;
    if (!Propagate(state, node.forced_out, node.forced_in)) return true;
    // The root relaxation stays untouched so a cycle-free optimum of the
    // plain flow problem comes back unchanged.
    if (result_.stats.nodes > 1 && !Tighten(state, node)) return true;

    std::vector<int> active;
    std::vector<bool> is_active(pool_.size(), false);
    auto consider = [&](int id) -> bool {  // false: node infeasible
      if (id < static_cast<int>(is_active.size()) && is_active[id]) return true;
      if (id >= static_cast<int>(is_active.size())) is_active.resize(id + 1, false);
      int free_edge = -1;
      switch (Classify(id, state, &free_edge)) {
        case Status::kViolated:
          return false;
        case Status::kUnit:
          state[free_edge] = -1;
          node.forced_out.push_back(free_edge);
          return true;
        case Status::kResolved:
          return true;
        case Status::kActive:
          is_active[id] = true;
          active.push_back(id);
          return true;
      }
      return true;
    };
    for (int id = 0; id < static_cast<int>(pool_.size()); ++id) {
      if (!consider(id)) return true;
    }

    const bool root = result_.stats.nodes == 1;
    const int iterations = root ? 60 : 12;
    Weight bound = node.bound;
    double mu = 1.0;
    int stalls = 0;
    std::vector<int> violated;  // active constraints violated by the last x
    std::vector<Weight> w(num_edges);
    std::vector<bool> in_x;  // edges of the last relaxation
    for (int it = 0; it < iterations; ++it) {
      if (TimeUp()) {
        node.bound = bound;
        node.seq = seq_++;
        queue_.push(std::move(node));
        return false;
      }
      for (int e = 0; e < num_edges; ++e) w[e] = scale_ * weights_[e];
      Weight constant = 0;
      for (int id : active) {
        if (lambda_[id] == 0) continue;
        for (int e : pool_[id]) w[e] -= lambda_[id];
        constant += lambda_[id] * static_cast<Weight>(pool_[id].size() - 1);
      }
      ++result_.stats.flow_solves;
      Relaxation relax = SolveRelaxation(instance_, w, params_, state);
      if (!relax.feasible) return true;
      const Weight lagrangian = relax.value + constant;
      const Weight node_bound = FloorDiv(lagrangian, scale_);
      if (node_bound < bound) {
        bound = node_bound;
        stalls = 0;
      } else if (++stalls >= 3) {
        mu /= 2;
        stalls = 0;
      }

      Assignment x(std::move(relax.edges));
      in_x.assign(num_edges, false);
      for (const auto& e : x.edges()) in_x[*instance_.EdgeIndex(e.agent, e.paper)] = true;
      const Weight value = TrueValue(x);
      const CycleReport report = FindReviewCycles(instance_, x, params_.z);
      violated.clear();
      if (!report.has_cycle) {
        Offer(x, value);
        if (scale_ * value == lagrangian) return true;  // node solved
      } else {
        // A cycle-free root relaxation is returned as is, so seed only here.
        if (!seeded_) SeedIncumbent();
        // A few cycles per round suffice to steer the multipliers; recording
        // all of them swamps the pool on dense relaxations.
        const size_t take = std::min<size_t>(report.cycles.size(), kCyclesPerRound);
        for (size_t k = 0; k < take; ++k) {
          const auto& cycle = report.cycles[k];
          const int id = Record(cycle);
          if (!consider(id)) return true;
          if (is_active[id]) violated.push_back(id);
        }
        if (it == 0 || it == iterations - 1) Repair(x);
      }
      if (incumbent_ && bound <= *incumbent_) return true;

      // Subgradient step on the active multipliers.
      std::vector<std::pair<int, Weight>> grad;
      double norm2 = 0;
      for (int id : active) {
        Weight g = -static_cast<Weight>(pool_[id].size() - 1);
        for (int e : pool_[id]) g += x.Contains(instance_.qualification_edges()[e].agent,
                                                instance_.qualification_edges()[e].paper);
        if (g < 0 && lambda_[id] == 0) continue;  // projected away
        if (g != 0) {
          grad.emplace_back(id, g);
          norm2 += static_cast<double>(g) * static_cast<double>(g);
        }
      }
      if (norm2 == 0) break;
      const double target = incumbent_ ? static_cast<double>(scale_ * *incumbent_)
                                       : static_cast<double>(lagrangian) * 0.95;
      const double gap = std::max(static_cast<double>(lagrangian) - target,
                                  static_cast<double>(scale_));
      const double step = mu * gap / norm2;
      for (const auto& [id, g] : grad) {
        const double next = static_cast<double>(lambda_[id]) + step * static_cast<double>(g);
        lambda_[id] = std::max<Weight>(0, std::llround(next));
      }
    }

    // Without an incumbent the search is after feasibility: branch on one
    // edge of the paper with the least room, trying it in first.
    if (!incumbent_) {
      const int edge = FeasibilityBranchEdge(state, in_x);
      if (edge >= 0) {
        Node out = node, in = std::move(node);
        out.bound = in.bound = bound;
        out.forced_out.push_back(edge);
        out.seq = seq_++;
        queue_.push(std::move(out));
        in.forced_in.push_back(edge);
        in.seq = seq_++;
        queue_.push(std::move(in));
        return true;
      }
    }

    // Branch: prefer the violated constraint with the fewest free edges,
    // otherwise the active one with the largest multiplier.
    int pick = -1, pick_free = 0;
    auto free_count = [&](int id) {
      int n = 0;
      for (int e : pool_[id]) n += state[e] == 0;
      return n;
    };
    for (int id : violated) {
      if (!is_active[id]) continue;
      const int n = free_count(id);
      if (pick < 0 || n < pick_free) {
        pick = id;
        pick_free = n;
      }
    }
    if (pick < 0) {
      for (int id : active) {
        if (lambda_[id] > 0 && (pick < 0 || lambda_[id] > lambda_[pick])) pick = id;
      }
    }
    if (pick < 0) {
      for (int id : active) {
        if (free_count(id) >= 2) {
          pick = id;
          break;
        }
      }
    }
    if (pick < 0) throw std::logic_error("branch and bound: nothing to branch on");

    std::vector<int> free_edges;
    for (int e : pool_[pick]) {
      if (state[e] == 0) free_edges.push_back(e);
    }
    for (size_t i = 0; i < free_edges.size(); ++i) {
      Node child;
      child.bound = bound;
      child.seq = seq_++;
      child.forced_in = node.forced_in;
      child.forced_in.insert(child.forced_in.end(), free_edges.begin(), free_edges.begin() + i);
      child.forced_out = node.forced_out;
      child.forced_out.push_back(free_edges[i]);
      queue_.push(std::move(child));
    }
    return true;
  }

  void Finish(bool exhausted) {
    auto& st = result_.stats;
    st.constraints_generated = static_cast<int64_t>(pool_.size());
    if (incumbent_) {
      result_.assignment = std::move(best_);
      st.objective = incumbent_;
    }
    if (!exhausted) {
      st.status = incumbent_ ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
      st.bound = incumbent_;
    } else {
      st.status = incumbent_ ? SolveStatus::kFeasibleOnly
                             : SolveStatus::kNoSolutionWithinLimits;
      Weight bound = incumbent_.value_or(std::numeric_limits<Weight>::min());
      while (!queue_.empty()) {
        bound = std::max(bound, queue_.top().bound);
        queue_.pop();
      }
      if (bound != kNoBound && bound != std::numeric_limits<Weight>::min()) st.bound = bound;
    }
    st.wall_seconds = Seconds(start_);
  }

  const ReviewInstance& instance_;
  const SolveParams& params_;
  const SearchLimits& limits_;
  const std::vector<Weight> weights_;
  Weight scale_ = 1;
  Clock::time_point start_;
  SolveResult result_;
  std::priority_queue<Node> queue_;
  int64_t seq_ = 0;
  bool seeded_ = false;
  std::optional<Weight> incumbent_;
  Assignment best_;
  std::map<std::vector<int>, int> pool_index_;
  std::vector<std::vector<int>> pool_;
  std::vector<Weight> lambda_;
  std::vector<std::vector<int>> constraints_of_edge_;
  std::vector<std::vector<int>> edges_of_agent_;
  std::vector<std::vector<int>> edges_of_paper_;
};

}  // namespace

SolveResult MaxWeightZCycleFree(const ReviewInstance& instance, const SolveParams& params,
                                const SearchLimits& limits) {
  CheckParams(params);
  if (!params.z.bounded()) {
    throw ReviewError(FaultKind::kInvalidArgument, "max_weight_zcycle_free needs a finite z");
  }
  return BranchAndBound(instance, params, limits).Run();
}

std::string SolveStatsToJson(const SolveStats& stats, bool include_time) {
  nlohmann::ordered_json doc;
  doc["status"] = SolveStatusName(stats.status);
  doc["objective"] = stats.objective ? nlohmann::ordered_json(*stats.objective) : nullptr;
  doc["bound"] = stats.bound ? nlohmann::ordered_json(*stats.bound) : nullptr;
  doc["nodes"] = stats.nodes;
  doc["flow_solves"] = stats.flow_solves;
  doc["constraints_generated"] = stats.constraints_generated;
  if (include_time) doc["wall_seconds"] = stats.wall_seconds;
  return doc.dump(2) + "\n";
}

}  // namespace cfreview
