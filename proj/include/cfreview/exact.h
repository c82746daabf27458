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

// Exact solvers.
//
// The objective uses the instance weights when params.weighted is set and
// unit weights otherwise. Infeasibility is a status, not an exception.

#ifndef CFREVIEW_EXACT_H_
#define CFREVIEW_EXACT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cfreview/cycles.h"
#include "cfreview/instance.h"

namespace cfreview {

enum class SolveStatus {
  kOptimal,
  kFeasibleOnly,             // budget hit; best incumbent returned
  kInfeasible,
  kNoSolutionWithinLimits,   // budget hit before any incumbent
};

const char* SolveStatusName(SolveStatus status);

struct SolveStats {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<Weight> objective;  // present iff an assignment is returned
  // Best proven upper bound on the optimum; equals objective when optimal.
  std::optional<Weight> bound;
  int64_t nodes = 0;
  int64_t flow_solves = 0;
  int64_t constraints_generated = 0;
  double wall_seconds = 0.0;
};

struct SolveResult {
  Assignment assignment;
  SolveStats stats;
  // Lazily generated cycle constraints, in generation order. Each is the
  // review-cycle that was found violated.
  std::vector<ReviewCycle> constraints;
};

struct SearchLimits {
  int64_t max_nodes = 1'000'000;
  double max_seconds = 300.0;
};

// Maximum-weight c-d-valid assignment through min-cost flow.
SolveResult MaxWeightAssignment(const ReviewInstance& instance, const SolveParams& params);

// Maximum-weight c-d-valid z-cycle-free assignment: best-first branch and
// bound over the flow relaxation with lazily generated cycle constraints.
// params.z must be bounded.
SolveResult MaxWeightZCycleFree(const ReviewInstance& instance, const SolveParams& params,
                                const SearchLimits& limits = {});

// Exhaustive reference solver for small instances: backtracking over every
// c-d-valid z-cycle-free assignment with safe pruning only. Cycle tests are
// done here from scratch and every solution is re-checked with
// FindReviewCycles. Throws ReviewError(kOracleTooLarge) past `max_nodes`.
struct OracleResult {
  bool feasible = false;
  Weight weight = 0;
  Assignment witness;
  int64_t nodes = 0;
};
OracleResult BruteForceOracle(const ReviewInstance& instance, const SolveParams& params,
                              int64_t max_nodes = 20'000'000);

std::string SolveStatsToJson(const SolveStats& stats, bool include_time = true);

}  // namespace cfreview

#endif  // CFREVIEW_EXACT_H_
