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

#ifndef CFREVIEW_REVIEW_GRAPH_H_
#define CFREVIEW_REVIEW_GRAPH_H_

#include <span>
#include <vector>

#include "cfreview/instance.h"

namespace cfreview {

// Mutable review graph (A u P, E' u E_P) over a fixed instance. Used by the
// solvers for incremental cycle tests. Search scratch space is owned by the
// object, so one ReviewGraph must not be queried from two threads at once.
class ReviewGraph {
 public:
  explicit ReviewGraph(const ReviewInstance& instance);
  ReviewGraph(const ReviewInstance& instance, const Assignment& assignment);

  const ReviewInstance& instance() const { return *instance_; }

  void Add(int agent, int paper);
  void Remove(int agent, int paper);
  bool Has(int agent, int paper) const;

  int agent_load(int agent) const { return static_cast<int>(reviews_[agent].size()); }
  int paper_load(int paper) const { return static_cast<int>(reviewers_[paper].size()); }
  int num_edges() const { return num_edges_; }
  // Papers reviewed by `agent`, in insertion order.
  std::span<const int> reviews_of(int agent) const { return reviews_[agent]; }
  // Agents reviewing `paper`, in insertion order.
  std::span<const int> reviewers_of(int paper) const { return reviewers_[paper]; }

  // Adding (agent, paper) closes a review cycle of length k <= z exactly when
  // `paper` reaches `agent` on a path of 2k - 1 edges.
  bool ClosesCycle(int agent, int paper, CycleBound z) const;

  // Agents reachable from `paper` using at most `max_edges` edges; negative
  // means unlimited. Sorted.
  std::vector<int> AgentsReachableFrom(int paper, int max_edges) const;
  // Papers from which `agent` is reachable within `max_edges` edges. Sorted.
  std::vector<int> PapersReaching(int agent, int max_edges) const;

  Assignment ToAssignment() const;

 private:
  // Forward search from `paper`; stops early when `target` (>= 0) is hit.
  bool Forward(int paper, int max_edges, int target) const;
  // Backward search into `agent`.
  void Backward(int agent, int max_edges) const;
  void NextStamp() const;

  const ReviewInstance* instance_;
  std::vector<std::vector<int>> reviews_;
  std::vector<std::vector<int>> reviewers_;
  int num_edges_ = 0;

  mutable std::vector<unsigned> agent_seen_;
  mutable std::vector<unsigned> paper_seen_;
  mutable unsigned stamp_ = 0;
  mutable std::vector<int> frontier_;
  mutable std::vector<int> next_;
};

}  // namespace cfreview

#endif  // CFREVIEW_REVIEW_GRAPH_H_
