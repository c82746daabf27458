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

#include "cfreview/generators.h"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

#include "cfreview/errors.h"
#include "cfreview/rng.h"

namespace cfreview {
namespace {

std::string Num(int i) { return std::to_string(i); }

[[noreturn]] void BadArgument(const std::string& what) {
  throw ReviewError(FaultKind::kInvalidArgument, what);
}

std::optional<ReviewInstance> TryRandom(const RandomControls& k, SplitMix64& rng) {
  InstanceBuilder b;
  for (int a = 0; a < k.n_agents; ++a) b.AddAgent("a" + Num(a + 1));
  for (int p = 0; p < k.n_papers; ++p) b.AddPaper("p" + Num(p + 1));

  std::vector<int> authored(k.n_agents, 0);
  std::vector<std::vector<bool>> is_author(k.n_agents, std::vector<bool>(k.n_papers, false));
  for (int p = 0; p < k.n_papers; ++p) {
    const int want = static_cast<int>(
        rng.UniformInt(k.min_authors_per_paper, k.max_authors_per_paper));
    std::vector<int> open;
    for (int a = 0; a < k.n_agents; ++a) {
      if (authored[a] < k.max_papers_per_author) open.push_back(a);
    }
    if (static_cast<int>(open.size()) < want) return std::nullopt;
    for (int i : SampleWithoutReplacement(rng, static_cast<int>(open.size()), want)) {
      const int a = open[i];
      ++authored[a];
      is_author[a][p] = true;
      b.AddAuthor(p, a);
    }
  }

  std::vector<int> qualified_count(k.n_papers, 0);
  std::vector<std::vector<int>> qualified(k.n_agents);
  for (int a = 0; a < k.n_agents; ++a) {
    std::vector<int> others;
    for (int p = 0; p < k.n_papers; ++p) {
      if (!is_author[a][p]) others.push_back(p);
    }
    const int drop = std::min<int>(k.conflicts_per_agent, static_cast<int>(others.size()));
    std::vector<bool> conflict(others.size(), false);
    for (int i : SampleWithoutReplacement(rng, static_cast<int>(others.size()), drop)) {
      conflict[i] = true;
    }
    for (size_t i = 0; i < others.size(); ++i) {
      if (conflict[i]) continue;
      qualified[a].push_back(others[i]);
      ++qualified_count[others[i]];
    }
    if (k.min_qualified_papers &&
        static_cast<int>(qualified[a].size()) < *k.min_qualified_papers) {
      return std::nullopt;
    }
  }
  if (k.min_qualified_reviewers) {
    for (int p = 0; p < k.n_papers; ++p) {
      if (qualified_count[p] < *k.min_qualified_reviewers) return std::nullopt;
    }
  }
  for (int a = 0; a < k.n_agents; ++a) {
    for (int p : qualified[a]) {
      if (k.weighted) {
        b.AddQualification(a, p, rng.UniformInt(0, k.max_weight));
      } else {
        b.AddQualification(a, p);
      }
    }
  }
  return b.Build();
}

}  // namespace

ReviewInstance GenRandom(const RandomControls& controls, uint64_t seed) {
  const auto& k = controls;
  if (k.n_agents < 0 || k.n_papers < 0 || k.min_authors_per_paper < 0 ||
      k.max_authors_per_paper < k.min_authors_per_paper || k.max_papers_per_author < 0 ||
      k.conflicts_per_agent < 0 || k.max_weight < 0) {
    BadArgument("gen_random: inconsistent controls");
  }
  for (uint64_t attempt = 0; attempt < 100; ++attempt) {
    SplitMix64 rng(MixSeed({seed, attempt}));
    if (auto instance = TryRandom(k, rng)) return *std::move(instance);
  }
  BadArgument("gen_random: bounds unsatisfiable after 100 attempts");
}

ReviewInstance GenSatGadget(const Cnf& cnf) {
  const int n = cnf.num_variables;
  if (n < 0) BadArgument("sat gadget: negative variable count");
  std::vector<int> pos(n + 1, 0), neg(n + 1, 0);
  for (const auto& clause : cnf.clauses) {
    for (int lit : clause) {
      if (lit == 0 || std::abs(lit) > n) BadArgument("sat gadget: literal out of range");
      (lit > 0 ? pos : neg)[std::abs(lit)]++;
    }
  }
  for (int v = 1; v <= n; ++v) {
    if (pos[v] > 2 || neg[v] > 2) {
      BadArgument("sat gadget: variable x" + Num(v) + " occurs more than twice with one sign");
    }
  }

  InstanceBuilder b;
  std::vector<int> a_pos(n + 1), a_neg(n + 1), p_pos(n + 1), p_neg(n + 1);
  for (int v = 1; v <= n; ++v) {
    a_pos[v] = b.AddAgent("a_x" + Num(v));
    a_neg[v] = b.AddAgent("a_nx" + Num(v));
    const int bx = b.AddAgent("b_x" + Num(v));
    p_pos[v] = b.AddPaper("p_x" + Num(v));
    p_neg[v] = b.AddPaper("p_nx" + Num(v));
    const int qx = b.AddPaper("q_x" + Num(v));
    b.AddQualification(a_pos[v], p_pos[v]);
    b.AddQualification(bx, p_pos[v]);
    b.AddQualification(a_neg[v], p_neg[v]);
    b.AddQualification(bx, p_neg[v]);
    b.AddQualification(a_pos[v], qx);
    b.AddQualification(a_neg[v], qx);
  }
  for (size_t j = 0; j < cnf.clauses.size(); ++j) {
    const std::string c = "c" + Num(static_cast<int>(j) + 1);
    std::array<int, 3> agents{}, papers{};
    for (int i = 0; i < 3; ++i) {
      agents[i] = b.AddAgent("a_" + c + "_" + Num(i + 1));
      papers[i] = b.AddPaper("p_" + c + "_" + Num(i + 1));
      b.AddQualification(agents[i], papers[i]);
    }
    for (int t = 1; t <= 2; ++t) {
      const int dummy_agent = b.AddAgent("d_" + c + "_" + Num(t));
      const int dummy_paper = b.AddPaper("q_" + c + "_" + Num(t));
      for (int i = 0; i < 3; ++i) {
        b.AddQualification(dummy_agent, papers[i]);
        b.AddQualification(agents[i], dummy_paper);
      }
    }
    for (int i = 0; i < 3; ++i) {
      const int lit = cnf.clauses[j][i];
      const int v = std::abs(lit);
      b.AddAuthor(lit > 0 ? p_pos[v] : p_neg[v], agents[i]);
      b.AddAuthor(papers[i], lit > 0 ? a_pos[v] : a_neg[v]);
    }
  }
  return b.Build();
}

ReviewInstance PadMinDegrees(const ReviewInstance& instance, int delta) {
  if (delta < 0) BadArgument("pad: delta must be non-negative");
  InstanceData data = instance.ToData();
  std::vector<std::string> a1, a2, p1, p2;
  for (int i = 1; i <= delta; ++i) {
    a1.push_back("pad_a1_" + Num(i));
    a2.push_back("pad_a2_" + Num(i));
    p1.push_back("pad_p1_" + Num(i));
    p2.push_back("pad_p2_" + Num(i));
  }
  const std::vector<std::string> agents = data.agents, papers = data.papers;
  auto add = [&data](const std::string& a, const std::string& p) {
    data.qualification.emplace_back(a, p);
    if (data.weights) data.weights->push_back({a, p, 0});
  };
  for (const auto& a : a1) {
    for (const auto& p : p1) add(a, p);
    for (const auto& p : papers) add(a, p);
  }
  for (const auto& a : agents) {
    for (const auto& p : p2) add(a, p);
  }
  for (const auto& a : a2) {
    for (const auto& p : p2) add(a, p);
  }
  data.agents.insert(data.agents.end(), a1.begin(), a1.end());
  data.agents.insert(data.agents.end(), a2.begin(), a2.end());
  data.papers.insert(data.papers.end(), p1.begin(), p1.end());
  data.papers.insert(data.papers.end(), p2.begin(), p2.end());
  return ReviewInstance::FromData(data);
}

ReviewInstance GenMisGadget(const ColoredGraph& graph) {
  const int k = static_cast<int>(graph.classes.size());
  if (k == 0) BadArgument("mis gadget: no color classes");
  {
    std::vector<int> seen(graph.num_vertices, 0);
    for (const auto& cls : graph.classes) {
      if (cls.empty()) BadArgument("mis gadget: empty color class");
      for (int v : cls) {
        if (v < 0 || v >= graph.num_vertices || seen[v]++) {
          BadArgument("mis gadget: classes must partition the vertices");
        }
      }
    }
    if (std::count(seen.begin(), seen.end(), 0) > 0) {
      BadArgument("mis gadget: classes must partition the vertices");
    }
  }
  // Normalise: n > k and |V^c| = n + c - 1, padding with universal vertices.
  int n = k + 1;
  for (int c = 1; c <= k; ++c) {
    n = std::max(n, static_cast<int>(graph.classes[c - 1].size()) - c + 1);
  }
  struct Vertex {
    std::string name;
    int original;  // -1 for padding
  };
  std::vector<std::vector<Vertex>> classes(k);
  for (int c = 1; c <= k; ++c) {
    for (int v : graph.classes[c - 1]) classes[c - 1].push_back({"v" + Num(v + 1), v});
    for (int u = 1; static_cast<int>(classes[c - 1].size()) < n + c - 1; ++u) {
      classes[c - 1].push_back({"u" + Num(u), -1});
    }
  }
  std::set<std::pair<int, int>> adjacent;
  for (auto [u, v] : graph.edges) {
    if (u < 0 || v < 0 || u >= graph.num_vertices || v >= graph.num_vertices) {
      BadArgument("mis gadget: edge endpoint out of range");
    }
    adjacent.insert({u, v});
    adjacent.insert({v, u});
  }
  auto adj = [&](const Vertex& x, const Vertex& y) {
    if (x.original < 0 || y.original < 0) return true;  // padding is universal
    return adjacent.contains({x.original, y.original});
  };

  InstanceData data;
  std::vector<std::string> special_agent(k), special_paper(k);
  std::vector<std::vector<std::string>> vertex_agent(k), vertex_paper(k), dummy_agent(k),
      dummy_paper(k);
  for (int c = 1; c <= k; ++c) {
    const std::string col = Num(c);
    special_agent[c - 1] = "a_s" + col;
    special_paper[c - 1] = "p_s" + col;
    data.agents.push_back(special_agent[c - 1]);
    data.papers.push_back(special_paper[c - 1]);
    for (const auto& v : classes[c - 1]) {
      vertex_agent[c - 1].push_back("a_c" + col + "_" + v.name);
      vertex_paper[c - 1].push_back("p_c" + col + "_" + v.name);
      data.agents.push_back(vertex_agent[c - 1].back());
      data.papers.push_back(vertex_paper[c - 1].back());
    }
    for (int i = 1; i <= n + c - 2; ++i) {
      dummy_agent[c - 1].push_back("a_d" + col + "_" + Num(i));
      dummy_paper[c - 1].push_back("p_d" + col + "_" + Num(i));
      data.agents.push_back(dummy_agent[c - 1].back());
      data.papers.push_back(dummy_paper[c - 1].back());
    }
  }
  data.agents.push_back("a_star");
  data.papers.push_back("p_star");

  std::set<std::pair<std::string, std::string>> authored;  // (paper, agent)
  auto author = [&](const std::string& p, const std::string& a) { authored.insert({p, a}); };
  for (int c = 0; c < k; ++c) {
    for (const auto& a : vertex_agent[c]) author("p_star", a);
    for (const auto& a : dummy_agent[c]) author("p_star", a);
    for (int other = 0; other < k; ++other) {
      if (other == c) continue;
      for (const auto& a : vertex_agent[other]) author(special_paper[c], a);
      for (const auto& a : dummy_agent[other]) author(special_paper[c], a);
    }
    author(special_paper[c], "a_star");
    for (const auto& p : dummy_paper[c]) author(p, special_agent[c]);
    for (size_t i = 0; i < classes[c].size(); ++i) {
      const std::string& p = vertex_paper[c][i];
      author(p, special_agent[c]);
      for (size_t j = 0; j < classes[c].size(); ++j) {
        if (j != i) author(p, vertex_agent[c][j]);
      }
      for (int c2 = 0; c2 < k; ++c2) {
        for (size_t j = 0; j < classes[c2].size(); ++j) {
          if (c2 == c && j == i) continue;
          if (adj(classes[c][i], classes[c2][j])) author(p, vertex_agent[c2][j]);
        }
      }
    }
  }
  // Keep the declared paper order for the authorship list.
  for (const auto& p : data.papers) {
    for (const auto& a : data.agents) {
      if (authored.contains({p, a})) data.authorship.emplace_back(p, a);
    }
  }
  for (const auto& a : data.agents) {
    for (const auto& p : data.papers) {
      if (!authored.contains({p, a})) data.qualification.emplace_back(a, p);
    }
  }
  return ReviewInstance::FromData(data);
}

ReviewInstance Gen2in4Gadget(const TwoInFourFormula& formula) {
  const int n = formula.num_variables;
  if (n < 1) BadArgument("2-in-4 gadget: needs at least one variable");
  std::vector<std::vector<int>> pos_clauses(n + 1), neg_clauses(n + 1);
  for (size_t j = 0; j < formula.clauses.size(); ++j) {
    std::set<int> distinct;
    for (int lit : formula.clauses[j]) {
      if (lit == 0 || std::abs(lit) > n) BadArgument("2-in-4 gadget: literal out of range");
      distinct.insert(lit);
      (lit > 0 ? pos_clauses : neg_clauses)[std::abs(lit)].push_back(static_cast<int>(j));
    }
    if (distinct.size() != 4) BadArgument("2-in-4 gadget: clause literals must be distinct");
  }
  for (int v = 1; v <= n; ++v) {
    if (pos_clauses[v].size() != 2 || neg_clauses[v].size() != 2) {
      BadArgument("2-in-4 gadget: variable x" + Num(v) +
                  " must occur exactly twice positive and twice negative");
    }
  }

  InstanceBuilder b;
  std::vector<int> a_pos(n + 1), a_neg(n + 1), a1(n + 1), a2(n + 1);
  auto add_agent = [&b](const std::string& id) {
    const int a = b.AddAgent(id);
    b.AddAuthor(b.AddPaper("p_" + id), a);
    return a;
  };
  for (int v = 1; v <= n; ++v) {
    a_pos[v] = add_agent("a_pos_x" + Num(v));
    a_neg[v] = add_agent("a_neg_x" + Num(v));
    a1[v] = add_agent("a1_x" + Num(v));
    a2[v] = add_agent("a2_x" + Num(v));
  }
  std::vector<int> clause_agent;
  for (size_t j = 0; j < formula.clauses.size(); ++j) {
    clause_agent.push_back(add_agent("b_c" + Num(static_cast<int>(j) + 1)));
  }
  // Agent i authors paper i, so a symmetric pair {x, y} is two edges.
  std::set<std::pair<int, int>> pairs;
  auto link = [&pairs](int x, int y) {
    if (x != y) pairs.insert({std::min(x, y), std::max(x, y)});
  };
  for (int v = 1; v <= n; ++v) {
    for (int side : {a_pos[v], a_neg[v]}) {
      link(side, a1[v]);
      link(side, a2[v]);
    }
    for (int j : pos_clauses[v]) link(a_pos[v], clause_agent[j]);
    for (int j : neg_clauses[v]) link(a_neg[v], clause_agent[j]);
    link(a1[v], a2[v]);
    link(a2[v], a1[v % n + 1]);
  }
  std::set<std::pair<int, int>> directed;
  for (auto [x, y] : pairs) {
    directed.insert({x, y});
    directed.insert({y, x});
  }
  for (auto [x, y] : directed) b.AddQualification(x, y);
  return b.Build();
}

ReviewInstance QualificationsToWeights(const ReviewInstance& instance) {
  if (instance.weighted()) BadArgument("qualifications_to_weights: input already weighted");
  InstanceBuilder b;
  b.MarkWeighted();
  for (int a = 0; a < instance.num_agents(); ++a) b.AddAgent(instance.agent_id(a));
  for (int p = 0; p < instance.num_papers(); ++p) b.AddPaper(instance.paper_id(p));
  for (int p = 0; p < instance.num_papers(); ++p) {
    for (int a : instance.authors_of(p)) b.AddAuthor(p, a);
  }
  for (int a = 0; a < instance.num_agents(); ++a) {
    for (int p = 0; p < instance.num_papers(); ++p) {
      if (instance.IsQualified(a, p)) {
        b.AddQualification(a, p, 1);
      } else if (!instance.IsAuthor(a, p)) {
        b.AddQualification(a, p, 0);
      }
    }
  }
  b.SetSelfReviewForbidden(instance.self_review_forbidden());
  return b.Build();
}

}  // namespace cfreview
