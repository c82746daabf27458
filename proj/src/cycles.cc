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

#include "cfreview/cycles.h"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <functional>
#include <sstream>

#include "json.hpp"

namespace cfreview {
namespace {

// Review lists per agent, sorted by paper index.
std::vector<std::vector<int>> ReviewsByAgent(const ReviewInstance& instance,
                                             const Assignment& assignment) {
  std::vector<std::vector<int>> reviews(instance.num_agents());
  for (const auto& e : assignment.edges()) reviews[e.agent].push_back(e.paper);
  return reviews;  // Assignment edges are sorted, so each list is too.
}

class Enumerator {
 public:
  Enumerator(const ReviewInstance& instance, const std::vector<std::vector<int>>& reviews,
             int z)
      : instance_(instance),
        reviews_(reviews),
        z_(z),
        agent_used_(instance.num_agents(), false),
        paper_used_(instance.num_papers(), false) {}

  std::vector<ReviewCycle> Run() {
    for (int s = 0; s < instance_.num_agents(); ++s) {
      start_ = s;
      for (int p1 : instance_.papers_of(s)) {
        agents_.assign(1, s);
        papers_.assign(1, p1);
        agent_used_[s] = true;
        paper_used_[p1] = true;
        Extend(s);
        agent_used_[s] = false;
        paper_used_[p1] = false;
      }
    }
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  void Extend(int agent) {
    const int k = static_cast<int>(agents_.size());
    for (int q : reviews_[agent]) {
      if (q == papers_.front()) {
        out_.push_back({agents_, papers_});
        continue;
      }
      if (k >= z_ || paper_used_[q]) continue;
      for (int b : instance_.authors_of(q)) {
        if (b <= start_ || agent_used_[b]) continue;
        agents_.push_back(b);
        papers_.push_back(q);
        agent_used_[b] = true;
        paper_used_[q] = true;
        Extend(b);
        agent_used_[b] = false;
        paper_used_[q] = false;
        agents_.pop_back();
        papers_.pop_back();
      }
    }
  }

  const ReviewInstance& instance_;
  const std::vector<std::vector<int>>& reviews_;
  const int z_;
  int start_ = 0;
  std::vector<bool> agent_used_;
  std::vector<bool> paper_used_;
  std::vector<int> agents_;
  std::vector<int> papers_;
  std::vector<ReviewCycle> out_;
};

// Combined graph: agents are nodes [0, n_A), papers [n_A, n_A + n_P).
struct Combined {
  int n_agents = 0;
  std::vector<std::vector<int>> out;
};

Combined BuildCombined(const ReviewInstance& instance,
                       const std::vector<std::vector<int>>& reviews) {
  Combined g;
  g.n_agents = instance.num_agents();
  g.out.resize(instance.num_agents() + instance.num_papers());
  for (int a = 0; a < instance.num_agents(); ++a) {
    for (int p : reviews[a]) g.out[a].push_back(g.n_agents + p);
  }
  for (int p = 0; p < instance.num_papers(); ++p) {
    for (int a : instance.authors_of(p)) g.out[g.n_agents + p].push_back(a);
  }
  return g;
}

bool KahnAcyclic(const Combined& g) {
  const int n = static_cast<int>(g.out.size());
  std::vector<int> indeg(n, 0);
  for (const auto& adj : g.out) {
    for (int v : adj) ++indeg[v];
  }
  std::vector<int> queue;
  for (int v = 0; v < n; ++v) {
    if (indeg[v] == 0) queue.push_back(v);
  }
  for (size_t i = 0; i < queue.size(); ++i) {
    for (int v : g.out[queue[i]]) {
      if (--indeg[v] == 0) queue.push_back(v);
    }
  }
  return static_cast<int>(queue.size()) == n;
}

// Iterative Tarjan. Returns component id per node and component sizes.
std::vector<int> StrongComponents(const Combined& g, std::vector<int>& sizes) {
  const int n = static_cast<int>(g.out.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::pair<int, size_t>> call;
  int counter = 0;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next == 0 && index[v] < 0) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (next < g.out[v].size()) {
        const int w = g.out[v][next++];
        if (index[w] < 0) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        const int id = static_cast<int>(sizes.size());
        sizes.push_back(0);
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = id;
          ++sizes[id];
        } while (w != v);
      }
      const int done = v;
      call.pop_back();
      if (!call.empty()) {
        const int parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return comp;
}

// Shortest cycle through `s` inside its strong component.
ReviewCycle Witness(const Combined& g, const std::vector<int>& comp, int s) {
  const int n = static_cast<int>(g.out.size());
  std::vector<int> parent(n, -2);
  std::deque<int> queue{s};
  parent[s] = -1;
  int last = -1;
  while (!queue.empty() && last < 0) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : g.out[v]) {
      if (comp[w] != comp[s]) continue;
      if (w == s) {
        last = v;
        break;
      }
      if (parent[w] != -2) continue;
      parent[w] = v;
      queue.push_back(w);
    }
  }
  // Path s -> q_1 -> b_1 -> ... -> q_k -> s, recovered backwards.
  std::vector<int> path;
  for (int v = last; v != -1; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  ReviewCycle cycle;
  for (int v : path) {
    if (v < g.n_agents) cycle.agents.push_back(v);
  }
  cycle.papers.push_back(path.back() - g.n_agents);
  for (size_t i = 1; i + 1 < path.size(); i += 2) {
    cycle.papers.push_back(path[i] - g.n_agents);
  }
  return cycle;
}

std::vector<int> ShortestThrough(const Combined& g) {
  const int n = static_cast<int>(g.out.size());
  std::vector<int> shortest(n, 0), dist(n);
  std::vector<int> queue;
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.assign(1, s);
    dist[s] = 0;
    for (size_t i = 0; i < queue.size() && shortest[s] == 0; ++i) {
      const int v = queue[i];
      for (int w : g.out[v]) {
        if (w == s) {
          shortest[s] = (dist[v] + 1) / 2;
          break;
        }
        if (dist[w] >= 0) continue;
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return shortest;
}

double FractionUpTo(const std::vector<int>& shortest, int k) {
  if (shortest.empty()) return 0.0;
  const auto hit = std::count_if(shortest.begin(), shortest.end(),
                                 [k](int s) { return s > 0 && s <= k; });
  return static_cast<double>(hit) / static_cast<double>(shortest.size());
}

}  // namespace

std::vector<ReviewEdge> ReviewCycle::ReviewEdges() const {
  std::vector<ReviewEdge> edges;
  const int k = length();
  for (int i = 0; i < k; ++i) edges.push_back({agents[i], papers[(i + 1) % k]});
  std::sort(edges.begin(), edges.end());
  return edges;
}

CycleReport FindReviewCycles(const ReviewInstance& instance,
                             const Assignment& assignment, CycleBound z) {
  CycleReport report;
  report.bound = z;
  const auto reviews = ReviewsByAgent(instance, assignment);
  std::vector<bool> agent_hit(instance.num_agents(), false);
  std::vector<bool> paper_hit(instance.num_papers(), false);

  if (z.bounded()) {
    report.cycles = Enumerator(instance, reviews, z.z()).Run();
    report.has_cycle = !report.cycles.empty();
    for (const auto& c : report.cycles) {
      for (int a : c.agents) agent_hit[a] = true;
      for (int p : c.papers) paper_hit[p] = true;
    }
  } else {
    const Combined g = BuildCombined(instance, reviews);
    report.has_cycle = !KahnAcyclic(g);
    if (report.has_cycle) {
      std::vector<int> sizes;
      const auto comp = StrongComponents(g, sizes);
      int witness_start = -1;
      for (int v = 0; v < static_cast<int>(comp.size()); ++v) {
        if (sizes[comp[v]] < 2) continue;
        if (v < g.n_agents) {
          agent_hit[v] = true;
          if (witness_start < 0) witness_start = v;
        } else {
          paper_hit[v - g.n_agents] = true;
        }
      }
      report.cycles.push_back(Witness(g, comp, witness_start));
    }
  }

  for (int a = 0; a < instance.num_agents(); ++a) {
    if (agent_hit[a]) report.agents_in_cycle.push_back(a);
  }
  for (int p = 0; p < instance.num_papers(); ++p) {
    if (paper_hit[p]) report.papers_in_cycle.push_back(p);
  }
  report.agent_fraction = {static_cast<int64_t>(report.agents_in_cycle.size()),
                           instance.num_agents()};
  report.paper_fraction = {static_cast<int64_t>(report.papers_in_cycle.size()),
                           instance.num_papers()};
  return report;
}

bool IsReviewCycle(const ReviewInstance& instance, const Assignment& assignment,
                   const ReviewCycle& cycle) {
  const int k = cycle.length();
  if (k == 0 || static_cast<int>(cycle.papers.size()) != k) return false;
  std::vector<int> agents = cycle.agents, papers = cycle.papers;
  std::sort(agents.begin(), agents.end());
  std::sort(papers.begin(), papers.end());
  if (std::adjacent_find(agents.begin(), agents.end()) != agents.end()) return false;
  if (std::adjacent_find(papers.begin(), papers.end()) != papers.end()) return false;
  for (int i = 0; i < k; ++i) {
    const int a = cycle.agents[i];
    if (a < 0 || a >= instance.num_agents()) return false;
    if (cycle.papers[i] < 0 || cycle.papers[i] >= instance.num_papers()) return false;
    if (!instance.IsAuthor(a, cycle.papers[i])) return false;
    if (!assignment.Contains(a, cycle.papers[(i + 1) % k])) return false;
  }
  return true;
}

double Exposure::AgentFraction(int k) const { return FractionUpTo(agent_shortest, k); }
double Exposure::PaperFraction(int k) const { return FractionUpTo(paper_shortest, k); }

Exposure ComputeExposure(const ReviewInstance& instance, const Assignment& assignment) {
  const Combined g = BuildCombined(instance, ReviewsByAgent(instance, assignment));
  const auto shortest = ShortestThrough(g);
  Exposure out;
  out.agent_shortest.assign(shortest.begin(), shortest.begin() + g.n_agents);
  out.paper_shortest.assign(shortest.begin() + g.n_agents, shortest.end());
  return out;
}

std::string CycleReportToJson(const ReviewInstance& instance, const CycleReport& report) {
  using nlohmann::json;
  json doc = json::object();
  if (report.bound.bounded()) {
    doc["z"] = report.bound.z();
  } else {
    doc["z"] = "unbounded";
  }
  doc["has_cycle"] = report.has_cycle;
  json cycles = json::array();
  for (const auto& c : report.cycles) {
    json agents = json::array(), papers = json::array();
    for (int a : c.agents) agents.push_back(instance.agent_id(a));
    for (int p : c.papers) papers.push_back(instance.paper_id(p));
    cycles.push_back({{"agents", agents}, {"papers", papers}});
  }
  doc["num_cycles"] = report.cycles.size();
  doc["cycles"] = std::move(cycles);
  json agents = json::array(), papers = json::array();
  for (int a : report.agents_in_cycle) agents.push_back(instance.agent_id(a));
  for (int p : report.papers_in_cycle) papers.push_back(instance.paper_id(p));
  doc["agents_in_cycle"] = std::move(agents);
  doc["papers_in_cycle"] = std::move(papers);
  auto fraction = [](const Fraction& f) {
    return json{{"num", f.num}, {"den", f.den}};
  };
  doc["agent_fraction"] = fraction(report.agent_fraction);
  doc["paper_fraction"] = fraction(report.paper_fraction);
  return doc.dump(2) + "\n";
}

std::string ExposureCsv(const ReviewInstance& instance, const CycleReport& report,
                        const Exposure& exposure) {
  std::ostringstream out;
  out << "kind,id,in_cycle,shortest_cycle\n";
  std::vector<bool> agent_hit(instance.num_agents(), false);
  std::vector<bool> paper_hit(instance.num_papers(), false);
  for (int a : report.agents_in_cycle) agent_hit[a] = true;
  for (int p : report.papers_in_cycle) paper_hit[p] = true;
  for (int a = 0; a < instance.num_agents(); ++a) {
    out << "agent," << instance.agent_id(a) << ',' << (agent_hit[a] ? 1 : 0) << ','
        << exposure.agent_shortest[a] << '\n';
  }
  for (int p = 0; p < instance.num_papers(); ++p) {
    out << "paper," << instance.paper_id(p) << ',' << (paper_hit[p] ? 1 : 0) << ','
        << exposure.paper_shortest[p] << '\n';
  }
  return out.str();
}

}  // namespace cfreview
