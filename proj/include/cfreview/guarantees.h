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

// Degree-based sufficient conditions under which the greedy heuristics are
// known to succeed. Each checker returns every condition with both sides
// instantiated; arithmetic is exact (integers and rationals, printed as
// decimal strings).

#ifndef CFREVIEW_GUARANTEES_H_
#define CFREVIEW_GUARANTEES_H_

#include <optional>
#include <string>
#include <vector>

#include "cfreview/instance.h"

namespace cfreview {

struct GuaranteeCondition {
  std::string name;
  std::string left;
  std::string right;
  bool satisfied = false;
};

struct GuaranteeVerdict {
  bool holds = false;
  std::vector<GuaranteeCondition> conditions;

  const GuaranteeCondition* Find(const std::string& name) const;
};

// Single-author papers, authors of at most one paper, d <= c (only checked
// when c is given), and every paper has >= n_P + d qualified reviewers.
GuaranteeVerdict CheckProp3(const ReviewInstance& instance, int d_paper,
                            std::optional<int> c_reviewer = std::nullopt);
// The c = d = 1 single-author regime with a minimum-degree budget.
GuaranteeVerdict CheckProp4(const ReviewInstance& instance, const SolveParams& params);
// The general four-inequality condition. z must be bounded.
GuaranteeVerdict CheckThm4(const ReviewInstance& instance, const SolveParams& params);
// Thm4 specialised to c = 6, d = 3 and symmetric degrees.
GuaranteeVerdict CheckCor1(long long n_papers, long long coi, long long delta, int z);

// Same as CheckThm4 but on raw statistics, for callers without an instance.
struct Thm4Inputs {
  long long n_agents = 0;
  long long n_papers = 0;
  long long max_papers_per_author = 0;     // Delta_A^-
  long long max_authors_per_paper = 0;     // Delta_P^+
  long long min_qualified_papers = 0;      // delta_A^+
  long long min_qualified_reviewers = 0;   // delta_P^-
  int c_reviewer = 0;
  int d_paper = 0;
  int z = 0;
};
GuaranteeVerdict CheckThm4Stats(const Thm4Inputs& in);

std::string VerdictToJson(const GuaranteeVerdict& verdict);

}  // namespace cfreview

#endif  // CFREVIEW_GUARANTEES_H_
