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

#include "cfreview/instance.h"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "cfreview/errors.h"

namespace cfreview {

const char* FaultKindName(FaultKind kind) {
  switch (kind) {
    case FaultKind::kInvalidArgument:
      return "invalid argument";
    case FaultKind::kInvalidInstance:
      return "invalid instance";
    case FaultKind::kForeignEdge:
      return "foreign edge";
    case FaultKind::kNoWeights:
      return "no weights";
    case FaultKind::kStuck:
      return "stuck";
    case FaultKind::kSwapExhausted:
      return "swap exhausted";
    case FaultKind::kOracleTooLarge:
      return "instance too large for oracle";
    case FaultKind::kFormat:
      return "format error";
    case FaultKind::kIo:
      return "i/o error";
  }
  return "unknown";
}

std::string CycleBound::ToString() const {
  return bounded() ? std::to_string(z_) : std::string("unbounded");
}

std::optional<CycleBound> CycleBound::Parse(std::string_view text) {
  if (text == "unbounded" || text == "inf") return Unbounded();
  int z = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, z);
  if (ec != std::errc() || ptr != end || z < 0) return std::nullopt;
  return AtMost(z);
}

ValidationResult ValidateInstance(const InstanceData& data) {
  ValidationResult result;
  auto& out = result.violations;

  std::set<std::string> agents;
  for (const auto& a : data.agents) {
    if (!agents.insert(a).second) out.push_back("duplicate agent " + a);
  }
  std::set<std::string> papers;
  for (const auto& p : data.papers) {
    if (!papers.insert(p).second) out.push_back("duplicate paper " + p);
  }

  std::set<std::pair<std::string, std::string>> authored;  // (agent, paper)
  for (const auto& [p, a] : data.authorship) {
    bool known = true;
    if (!papers.contains(p)) {
      out.push_back("unknown paper " + p + " in authorship");
      known = false;
    }
    if (!agents.contains(a)) {
      out.push_back("unknown agent " + a + " in authorship");
      known = false;
    }
    if (known && !authored.insert({a, p}).second) {
      out.push_back("duplicate authorship edge " + p + "/" + a);
    }
  }

  std::set<std::pair<std::string, std::string>> qualified;
  for (const auto& [a, p] : data.qualification) {
    bool known = true;
    if (!agents.contains(a)) {
      out.push_back("unknown agent " + a + " in qualification");
      known = false;
    }
    if (!papers.contains(p)) {
      out.push_back("unknown paper " + p + " in qualification");
      known = false;
    }
    if (!known) continue;
    if (!qualified.insert({a, p}).second) {
      out.push_back("duplicate qualification edge " + a + "/" + p);
      continue;
    }
    if (data.self_review_forbidden && authored.contains({a, p})) {
      out.push_back("self-review edge " + a + "/" + p);
    }
  }

  if (data.weights) {
    std::set<std::pair<std::string, std::string>> weighted;
    for (const auto& w : *data.weights) {
      if (!qualified.contains({w.agent, w.paper})) {
        out.push_back("weight on non-qualification edge " + w.agent + "/" +
                      w.paper);
      } else if (!weighted.insert({w.agent, w.paper}).second) {
        out.push_back("duplicate weight " + w.agent + "/" + w.paper);
      }
    }
    for (const auto& edge : qualified) {
      if (!weighted.contains(edge)) {
        out.push_back("weight missing " + edge.first + "/" + edge.second);
      }
    }
  }
  return result;
}

ReviewInstance ReviewInstance::FromData(const InstanceData& data) {
  if (auto validation = ValidateInstance(data); !validation.ok()) {
    std::ostringstream msg;
    msg << "invalid instance:";
    for (const auto& v : validation.violations) msg << " [" << v << "]";
    throw ReviewError(FaultKind::kInvalidInstance, msg.str());
  }

  ReviewInstance inst;
  inst.agents_ = data.agents;
  inst.papers_ = data.papers;
  inst.self_review_forbidden_ = data.self_review_forbidden;
  for (int i = 0; i < inst.num_agents(); ++i) inst.agent_index_[inst.agents_[i]] = i;
  for (int i = 0; i < inst.num_papers(); ++i) inst.paper_index_[inst.papers_[i]] = i;

  inst.authors_of_.resize(inst.papers_.size());
  inst.papers_of_.resize(inst.agents_.size());
  for (const auto& [p, a] : data.authorship) {
    const int pi = inst.paper_index_.at(p);
    const int ai = inst.agent_index_.at(a);
    inst.authors_of_[pi].push_back(ai);
    inst.papers_of_[ai].push_back(pi);
  }
  for (auto& v : inst.authors_of_) std::sort(v.begin(), v.end());
  for (auto& v : inst.papers_of_) std::sort(v.begin(), v.end());
  inst.num_authorship_edges_ = static_cast<int>(data.authorship.size());

  inst.edges_.reserve(data.qualification.size());
  for (const auto& [a, p] : data.qualification) {
    inst.edges_.push_back({inst.agent_index_.at(a), inst.paper_index_.at(p)});
  }
  std::sort(inst.edges_.begin(), inst.edges_.end());
  inst.qualified_papers_.resize(inst.agents_.size());
  inst.qualified_agents_.resize(inst.papers_.size());
  inst.edge_index_.reserve(inst.edges_.size());
  for (int e = 0; e < inst.num_qualification_edges(); ++e) {
    const auto [a, p] = inst.edges_[e];
    inst.qualified_papers_[a].push_back(p);
    inst.qualified_agents_[p].push_back(a);
    inst.edge_index_[Key(a, p)] = e;
  }
  for (auto& v : inst.qualified_agents_) std::sort(v.begin(), v.end());

  if (data.weights) {
    inst.weighted_ = true;
    inst.weights_.assign(inst.edges_.size(), 0);
    for (const auto& w : *data.weights) {
      const int e = inst.edge_index_.at(
          Key(inst.agent_index_.at(w.agent), inst.paper_index_.at(w.paper)));
      inst.weights_[e] = w.weight;
    }
  }
  return inst;
}

InstanceData ReviewInstance::ToData() const {
  InstanceData data;
  data.agents = agents_;
  data.papers = papers_;
  data.self_review_forbidden = self_review_forbidden_;
  for (int p = 0; p < num_papers(); ++p) {
    for (int a : authors_of_[p]) data.authorship.emplace_back(papers_[p], agents_[a]);
  }
  for (const auto& e : edges_) {
    data.qualification.emplace_back(agents_[e.agent], papers_[e.paper]);
  }
  if (weighted_) {
    data.weights.emplace();
    for (int e = 0; e < num_qualification_edges(); ++e) {
      data.weights->push_back(
          {agents_[edges_[e].agent], papers_[edges_[e].paper], weights_[e]});
    }
  }
  return data;
}

std::optional<int> ReviewInstance::FindAgent(std::string_view id) const {
  auto it = agent_index_.find(std::string(id));
  if (it == agent_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> ReviewInstance::FindPaper(std::string_view id) const {
  auto it = paper_index_.find(std::string(id));
  if (it == paper_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> ReviewInstance::EdgeIndex(int agent, int paper) const {
  auto it = edge_index_.find(Key(agent, paper));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

bool ReviewInstance::IsAuthor(int agent, int paper) const {
  const auto& authors = authors_of_[paper];
  return std::binary_search(authors.begin(), authors.end(), agent);
}

int InstanceBuilder::AddAgent(std::string id) {
  data_.agents.push_back(std::move(id));
  return num_agents() - 1;
}

int InstanceBuilder::AddPaper(std::string id) {
  data_.papers.push_back(std::move(id));
  return num_papers() - 1;
}

void InstanceBuilder::AddAuthor(int paper, int agent) {
  data_.authorship.emplace_back(data_.papers.at(paper), data_.agents.at(agent));
}

void InstanceBuilder::AddQualification(int agent, int paper) {
  data_.qualification.emplace_back(data_.agents.at(agent), data_.papers.at(paper));
  weights_.push_back(1);
  any_unweighted_ = true;
}

void InstanceBuilder::AddQualification(int agent, int paper, Weight weight) {
  data_.qualification.emplace_back(data_.agents.at(agent), data_.papers.at(paper));
  weights_.push_back(weight);
  any_weight_ = true;
}

InstanceData InstanceBuilder::data() const {
  if (any_weight_ && any_unweighted_) {
    throw ReviewError(FaultKind::kInvalidArgument,
                      "builder mixes weighted and unweighted qualifications");
  }
  InstanceData data = data_;
  data.self_review_forbidden = self_review_forbidden_;
  if (any_weight_) {
    data.weights.emplace();
    data.weights->reserve(weights_.size());
    for (size_t i = 0; i < weights_.size(); ++i) {
      data.weights->push_back(
          {data.qualification[i].first, data.qualification[i].second, weights_[i]});
    }
  }
  return data;
}

ReviewInstance InstanceBuilder::Build() const {
  return ReviewInstance::FromData(data());
}

Assignment::Assignment(std::vector<ReviewEdge> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool Assignment::Contains(int agent, int paper) const {
  return std::binary_search(edges_.begin(), edges_.end(), ReviewEdge{agent, paper});
}

namespace {

void Extend(int value, int& max_value, std::optional<int>& min_value) {
  max_value = std::max(max_value, value);
  min_value = min_value ? std::min(*min_value, value) : value;
}

void RequireQualified(const ReviewInstance& instance, const ReviewEdge& e) {
  if (e.agent < 0 || e.agent >= instance.num_agents() || e.paper < 0 ||
      e.paper >= instance.num_papers() || !instance.IsQualified(e.agent, e.paper)) {
    throw ReviewError(FaultKind::kForeignEdge,
                      "foreign edge: (" + std::to_string(e.agent) + ", " +
                          std::to_string(e.paper) +
                          ") is not a qualification edge");
  }
}

}  // namespace

DegreeStats ComputeDegreeStats(const ReviewInstance& instance) {
  DegreeStats s;
  for (int a = 0; a < instance.num_agents(); ++a) {
    Extend(static_cast<int>(instance.papers_of(a).size()), s.max_papers_per_author,
           s.min_papers_per_author);
    Extend(static_cast<int>(instance.qualified_papers(a).size()),
           s.max_qualified_papers, s.min_qualified_papers);
  }
  for (int p = 0; p < instance.num_papers(); ++p) {
    Extend(static_cast<int>(instance.authors_of(p).size()), s.max_authors_per_paper,
           s.min_authors_per_paper);
    Extend(static_cast<int>(instance.qualified_agents(p).size()),
           s.max_qualified_reviewers, s.min_qualified_reviewers);
  }
  if (s.min_qualified_papers) s.coi = instance.num_papers() - *s.min_qualified_papers;
  return s;
}

LoadReport CheckAssignment(const ReviewInstance& instance,
                           const Assignment& assignment,
                           const SolveParams& params) {
  LoadReport report;
  report.agent_load.assign(instance.num_agents(), 0);
  report.paper_load.assign(instance.num_papers(), 0);
  for (const auto& e : assignment.edges()) {
    RequireQualified(instance, e);
    ++report.agent_load[e.agent];
    ++report.paper_load[e.paper];
  }
  for (int a = 0; a < instance.num_agents(); ++a) {
    if (report.agent_load[a] > params.c_reviewer) report.overloaded_agents.push_back(a);
  }
  for (int p = 0; p < instance.num_papers(); ++p) {
    if (report.paper_load[p] != params.d_paper) report.misreviewed_papers.push_back(p);
  }
  report.valid = report.overloaded_agents.empty() && report.misreviewed_papers.empty();
  return report;
}

bool IsValidAssignment(const ReviewInstance& instance, const Assignment& assignment,
                       const SolveParams& params) {
  return CheckAssignment(instance, assignment, params).valid;
}

Weight AssignmentWeight(const ReviewInstance& instance, const Assignment& assignment) {
  if (!instance.weighted()) {
    throw ReviewError(FaultKind::kNoWeights, "no weights: instance is unweighted");
  }
  return ObjectiveWeight(instance, assignment);
}

Weight ObjectiveWeight(const ReviewInstance& instance, const Assignment& assignment) {
  Weight total = 0;
  for (const auto& e : assignment.edges()) {
    RequireQualified(instance, e);
    total += instance.edge_weight(*instance.EdgeIndex(e.agent, e.paper));
  }
  return total;
}

}  // namespace cfreview
