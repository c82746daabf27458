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

#include "cfreview/review_graph.h"

#include <algorithm>
#include <limits>

namespace cfreview {
namespace {

void EraseValue(std::vector<int>& v, int value) {
  auto it = std::find(v.begin(), v.end(), value);
  if (it != v.end()) v.erase(it);
}

}  // namespace

ReviewGraph::ReviewGraph(const ReviewInstance& instance)
    : instance_(&instance),
      reviews_(instance.num_agents()),
      reviewers_(instance.num_papers()),
      agent_seen_(instance.num_agents(), 0),
      paper_seen_(instance.num_papers(), 0) {}

ReviewGraph::ReviewGraph(const ReviewInstance& instance, const Assignment& assignment)
    : ReviewGraph(instance) {
  for (const auto& e : assignment.edges()) Add(e.agent, e.paper);
}

void ReviewGraph::Add(int agent, int paper) {
  reviews_[agent].push_back(paper);
  reviewers_[paper].push_back(agent);
  ++num_edges_;
}

void ReviewGraph::Remove(int agent, int paper) {
  EraseValue(reviews_[agent], paper);
  EraseValue(reviewers_[paper], agent);
  --num_edges_;
}

bool ReviewGraph::Has(int agent, int paper) const {
  const auto& r = reviews_[agent];
  return std::find(r.begin(), r.end(), paper) != r.end();
}

void ReviewGraph::NextStamp() const {
  if (++stamp_ == 0) {
    std::fill(agent_seen_.begin(), agent_seen_.end(), 0);
    std::fill(paper_seen_.begin(), paper_seen_.end(), 0);
    stamp_ = 1;
  }
}

// Level-synchronous search. Papers sit at even distance from the start and
// agents at odd distance. Edges: paper -> its authors, agent -> its reviews.
bool ReviewGraph::Forward(int paper, int max_edges, int target) const {
  NextStamp();
  const int limit = max_edges < 0 ? std::numeric_limits<int>::max() : max_edges;
  frontier_.assign(1, paper);
  paper_seen_[paper] = stamp_;
  for (int dist = 0; dist < limit && !frontier_.empty(); dist += 2) {
    next_.clear();
    // papers -> agents (edge dist + 1)
    for (int p : frontier_) {
      for (int a : instance_->authors_of(p)) {
        if (agent_seen_[a] == stamp_) continue;
        agent_seen_[a] = stamp_;
        if (a == target) return true;
        next_.push_back(a);
      }
    }
    if (dist + 2 > limit) break;
    frontier_.clear();
    // agents -> papers (edge dist + 2)
    for (int a : next_) {
      for (int p : reviews_[a]) {
        if (paper_seen_[p] == stamp_) continue;
        paper_seen_[p] = stamp_;
        frontier_.push_back(p);
      }
    }
  }
  return false;
}

void ReviewGraph::Backward(int agent, int max_edges) const {
  NextStamp();
  const int limit = max_edges < 0 ? std::numeric_limits<int>::max() : max_edges;
  frontier_.assign(1, agent);
  agent_seen_[agent] = stamp_;
  for (int dist = 0; dist < limit && !frontier_.empty(); dist += 2) {
    next_.clear();
    // agent <- papers it authors
    for (int a : frontier_) {
      for (int p : instance_->papers_of(a)) {
        if (paper_seen_[p] == stamp_) continue;
        paper_seen_[p] = stamp_;
        next_.push_back(p);
      }
    }
    if (dist + 2 > limit) break;
    frontier_.clear();
    // paper <- agents reviewing it
    for (int p : next_) {
      for (int a : reviewers_[p]) {
        if (agent_seen_[a] == stamp_) continue;
        agent_seen_[a] = stamp_;
        frontier_.push_back(a);
      }
    }
  }
}

bool ReviewGraph::ClosesCycle(int agent, int paper, CycleBound z) const {
  if (z.bounded() && z.z() == 0) return false;
  return Forward(paper, z.bounded() ? 2 * z.z() - 1 : -1, agent);
}

std::vector<int> ReviewGraph::AgentsReachableFrom(int paper, int max_edges) const {
  Forward(paper, max_edges, -1);
  std::vector<int> out;
  for (int a = 0; a < instance_->num_agents(); ++a) {
    if (agent_seen_[a] == stamp_) out.push_back(a);
  }
  return out;
}

std::vector<int> ReviewGraph::PapersReaching(int agent, int max_edges) const {
  Backward(agent, max_edges);
  std::vector<int> out;
  for (int p = 0; p < instance_->num_papers(); ++p) {
    if (paper_seen_[p] == stamp_) out.push_back(p);
  }
  return out;
}

Assignment ReviewGraph::ToAssignment() const {
  std::vector<ReviewEdge> edges;
  edges.reserve(num_edges_);
  for (int a = 0; a < instance_->num_agents(); ++a) {
    for (int p : reviews_[a]) edges.push_back({a, p});
  }
  return Assignment(std::move(edges));
}

}  // namespace cfreview
