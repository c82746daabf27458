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

// Data model for review assignment problems.
//
// An instance is a bipartite graph over agents and papers with two edge sets:
// authorship edges (paper -> agent, "agent authors paper") and qualification
// edges (agent -> paper, "agent may review paper"). An assignment picks a
// subset of the qualification edges. Internally agents and papers are
// addressed by their position in the declared sequence; that position is
// also the tie-breaking order used by every solver.

#ifndef CFREVIEW_INSTANCE_H_
#define CFREVIEW_INSTANCE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cfreview {

using Weight = int64_t;

struct ReviewEdge {
  int agent = 0;
  int paper = 0;

  friend auto operator<=>(const ReviewEdge&, const ReviewEdge&) = default;
};

// Maximum review-cycle length to rule out. Unbounded means "completely
// cycle-free".
class CycleBound {
 public:
  static CycleBound AtMost(int z) { return CycleBound(z); }
  static CycleBound Unbounded() { return CycleBound(-1); }

  bool bounded() const { return z_ >= 0; }
  // Only meaningful when bounded().
  int z() const { return z_; }

  // Length limit usable in loops: z when bounded, `cap` otherwise.
  int LimitOr(int cap) const { return bounded() ? z_ : cap; }

  std::string ToString() const;
  // Accepts a non-negative integer or one of "unbounded", "inf".
  static std::optional<CycleBound> Parse(std::string_view text);

  friend bool operator==(const CycleBound&, const CycleBound&) = default;

 private:
  explicit CycleBound(int z) : z_(z) {}
  int z_;
};

struct SolveParams {
  int c_reviewer = 0;
  int d_paper = 0;
  CycleBound z = CycleBound::Unbounded();
  bool weighted = false;
};

// File-level form of an instance: identifiers as strings, exactly the fields
// of the JSON instance format. May violate the instance invariants; see
// ValidateInstance.
struct InstanceData {
  struct WeightEntry {
    std::string agent;
    std::string paper;
    Weight weight = 0;
  };

  std::vector<std::string> agents;
  std::vector<std::string> papers;
  // (paper, agent) pairs.
  std::vector<std::pair<std::string, std::string>> authorship;
  // (agent, paper) pairs.
  std::vector<std::pair<std::string, std::string>> qualification;
  std::optional<std::vector<WeightEntry>> weights;
  bool self_review_forbidden = true;
};

struct ValidationResult {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks every instance invariant; violations are returned as data.
ValidationResult ValidateInstance(const InstanceData& data);

// Immutable, index-addressed review instance. Always satisfies the instance
// invariants.
class ReviewInstance {
 public:
  ReviewInstance() = default;

  // Throws ReviewError(kInvalidInstance) listing the violations when `data`
  // is not a valid instance.
  static ReviewInstance FromData(const InstanceData& data);
  InstanceData ToData() const;

  int num_agents() const { return static_cast<int>(agents_.size()); }
  int num_papers() const { return static_cast<int>(papers_.size()); }
  const std::string& agent_id(int agent) const { return agents_[agent]; }
  const std::string& paper_id(int paper) const { return papers_[paper]; }
  std::optional<int> FindAgent(std::string_view id) const;
  std::optional<int> FindPaper(std::string_view id) const;

  // Sorted by agent index.
  std::span<const int> authors_of(int paper) const { return authors_of_[paper]; }
  // Sorted by paper index.
  std::span<const int> papers_of(int agent) const { return papers_of_[agent]; }
  // Sorted by paper index.
  std::span<const int> qualified_papers(int agent) const {
    return qualified_papers_[agent];
  }
  // Sorted by agent index.
  std::span<const int> qualified_agents(int paper) const {
    return qualified_agents_[paper];
  }

  // Qualification edges sorted by (agent, paper).
  std::span<const ReviewEdge> qualification_edges() const { return edges_; }
  int num_qualification_edges() const { return static_cast<int>(edges_.size()); }
  int num_authorship_edges() const { return num_authorship_edges_; }
  // Position of (agent, paper) in qualification_edges().
  std::optional<int> EdgeIndex(int agent, int paper) const;
  bool IsQualified(int agent, int paper) const {
    return EdgeIndex(agent, paper).has_value();
  }
  bool IsAuthor(int agent, int paper) const;

  bool weighted() const { return weighted_; }
  // Weight of qualification edge `edge_index`; 1 when unweighted.
  Weight edge_weight(int edge_index) const {
    return weighted_ ? weights_[edge_index] : 1;
  }
  bool self_review_forbidden() const { return self_review_forbidden_; }

 private:
  static uint64_t Key(int agent, int paper) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(agent)) << 32) |
           static_cast<uint32_t>(paper);
  }

  std::vector<std::string> agents_;
  std::vector<std::string> papers_;
  std::unordered_map<std::string, int> agent_index_;
  std::unordered_map<std::string, int> paper_index_;
  std::vector<std::vector<int>> authors_of_;
  std::vector<std::vector<int>> papers_of_;
  std::vector<std::vector<int>> qualified_papers_;
  std::vector<std::vector<int>> qualified_agents_;
  std::vector<ReviewEdge> edges_;
  std::unordered_map<uint64_t, int> edge_index_;
  std::vector<Weight> weights_;
  int num_authorship_edges_ = 0;
  bool weighted_ = false;
  bool self_review_forbidden_ = true;
};

// Index-based construction helper used by the generators.
class InstanceBuilder {
 public:
  int AddAgent(std::string id);
  int AddPaper(std::string id);
  void AddAuthor(int paper, int agent);
  void AddQualification(int agent, int paper);
  void AddQualification(int agent, int paper, Weight weight);
  void SetSelfReviewForbidden(bool forbidden) { self_review_forbidden_ = forbidden; }
  // Emit a (possibly empty) weight list even without weighted edges.
  void MarkWeighted() { any_weight_ = true; }

  int num_agents() const { return static_cast<int>(data_.agents.size()); }
  int num_papers() const { return static_cast<int>(data_.papers.size()); }

  // Throws like ReviewInstance::FromData.
  ReviewInstance Build() const;
  InstanceData data() const;

 private:
  InstanceData data_;
  bool any_weight_ = false;
  bool any_unweighted_ = false;
  std::vector<Weight> weights_;
  bool self_review_forbidden_ = true;
};

// A set of (agent, paper) review edges, kept sorted and duplicate-free.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<ReviewEdge> edges);

  std::span<const ReviewEdge> edges() const { return edges_; }
  int size() const { return static_cast<int>(edges_.size()); }
  bool empty() const { return edges_.empty(); }
  bool Contains(int agent, int paper) const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<ReviewEdge> edges_;
};

// Degree extrema over the declared vertex sets. A minimum over an empty set
// is nullopt, never 0.
struct DegreeStats {
  int max_papers_per_author = 0;              // Delta_A^-
  std::optional<int> min_papers_per_author;   // delta_A^-
  int max_authors_per_paper = 0;              // Delta_P^+
  std::optional<int> min_authors_per_paper;   // delta_P^+
  int max_qualified_papers = 0;               // Delta_A^+
  std::optional<int> min_qualified_papers;    // delta_A^+
  int max_qualified_reviewers = 0;            // Delta_P^-
  std::optional<int> min_qualified_reviewers; // delta_P^-
  // Largest number of papers a single agent may not review; n_P - delta_A^+.
  std::optional<int> coi;
};

DegreeStats ComputeDegreeStats(const ReviewInstance& instance);

struct LoadReport {
  bool valid = false;
  std::vector<int> agent_load;
  std::vector<int> paper_load;
  // Agents above c_reviewer.
  std::vector<int> overloaded_agents;
  // Papers whose review count differs from d_paper.
  std::vector<int> misreviewed_papers;
};

// c-d-validity: every agent reviews at most c papers and every paper receives
// exactly d reviews. Throws ReviewError(kForeignEdge) when the assignment
// contains a non-qualification edge.
LoadReport CheckAssignment(const ReviewInstance& instance,
                           const Assignment& assignment,
                           const SolveParams& params);
bool IsValidAssignment(const ReviewInstance& instance,
                       const Assignment& assignment, const SolveParams& params);

// Total weight. Throws ReviewError(kNoWeights) on unweighted instances and
// kForeignEdge on edges outside the qualification set.
Weight AssignmentWeight(const ReviewInstance& instance,
                        const Assignment& assignment);
// Like AssignmentWeight, but unweighted instances count 1 per edge.
Weight ObjectiveWeight(const ReviewInstance& instance,
                       const Assignment& assignment);

}  // namespace cfreview

#endif  // CFREVIEW_INSTANCE_H_
