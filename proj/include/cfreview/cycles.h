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

// Review-cycle detection.
//
// A review cycle of length k is a sequence of distinct agents a_1..a_k and
// distinct papers p_1..p_k where a_i authors p_i, a_i reviews p_{i+1} and
// a_k reviews p_1. Cycles are reported with the smallest agent index first.

#ifndef CFREVIEW_CYCLES_H_
#define CFREVIEW_CYCLES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "cfreview/instance.h"

namespace cfreview {

struct ReviewCycle {
  std::vector<int> agents;
  std::vector<int> papers;

  int length() const { return static_cast<int>(agents.size()); }
  // The assigned review edges (a_i, p_{i+1}) of the cycle, sorted.
  std::vector<ReviewEdge> ReviewEdges() const;

  friend auto operator<=>(const ReviewCycle&, const ReviewCycle&) = default;
};

struct Fraction {
  int64_t num = 0;
  int64_t den = 0;
  // 0 when den == 0.
  double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / den; }
};

struct CycleReport {
  CycleBound bound = CycleBound::Unbounded();
  // Every cycle of length 1..z for bounded z; at most one witness otherwise.
  std::vector<ReviewCycle> cycles;
  bool has_cycle = false;
  // Sorted vertex indices lying on at least one cycle within the bound.
  std::vector<int> agents_in_cycle;
  std::vector<int> papers_in_cycle;
  Fraction agent_fraction;
  Fraction paper_fraction;
};

// Edges outside the instance are not checked here; see CheckAssignment.
CycleReport FindReviewCycles(const ReviewInstance& instance,
                             const Assignment& assignment, CycleBound z);

// Checks a cycle edge by edge against authorship and `assignment`.
bool IsReviewCycle(const ReviewInstance& instance, const Assignment& assignment,
                   const ReviewCycle& cycle);

// Shortest review cycle through each vertex, 0 when none exists. Computed by
// breadth-first search, independently of the enumeration above.
struct Exposure {
  std::vector<int> agent_shortest;
  std::vector<int> paper_shortest;

  // Fraction of agents (papers) on some cycle of length <= k.
  double AgentFraction(int k) const;
  double PaperFraction(int k) const;
};

Exposure ComputeExposure(const ReviewInstance& instance, const Assignment& assignment);

std::string CycleReportToJson(const ReviewInstance& instance, const CycleReport& report);
// Columns: kind,id,in_cycle,shortest_cycle
std::string ExposureCsv(const ReviewInstance& instance, const CycleReport& report,
                        const Exposure& exposure);

}  // namespace cfreview

#endif  // CFREVIEW_CYCLES_H_
