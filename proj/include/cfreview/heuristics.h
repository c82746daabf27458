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

// Greedy assignment heuristics.
//
// GreedyDag builds a completely cycle-free d-d-valid assignment along a
// topological order of the agents. GreedySwap builds a c-d-valid z-cycle-free
// assignment by adding non-cycle-closing edges and, when stuck, trading one
// review for two. Both are deterministic: ties go to the lowest declared
// index.

#ifndef CFREVIEW_HEURISTICS_H_
#define CFREVIEW_HEURISTICS_H_

#include <cstdint>

#include "cfreview/instance.h"

namespace cfreview {

struct GreedyDagStats {
  // Primitive steps (vertex visits, edge scans); linear in the input size.
  int64_t operations = 0;
  int iterations = 0;
  // Whether the free capacity of the eligible pool stayed at |S_0| * d in
  // every iteration. Holds on single-author instances where every agent
  // authors at most one paper.
  bool conservation_held = true;
};

// Each agent reviews at most d papers and every paper gets exactly d reviews.
// Papers are processed in declared order. A reviewer of p must already be in
// the pool and must have joined strictly before every author of p who is in
// the pool; this keeps (A u P, E' u E_P) acyclic on arbitrary inputs.
//
// Throws ReviewError(kStuck) with the paper and iteration when fewer than d
// eligible reviewers remain.
Assignment GreedyDag(const ReviewInstance& instance, int d_paper,
                     GreedyDagStats* stats = nullptr);

struct GreedySwapStats {
  int iterations = 0;
  int additions = 0;  // Case 1 steps
  int swaps = 0;      // Case 2 steps
};

// params.z must be bounded. In weighted mode Case 1 takes an eligible edge of
// maximum weight; otherwise the first eligible edge in (paper, agent) order.
//
// Throws ReviewError(kSwapExhausted) with the stuck paper when no repair
// exists, kNoWeights for weighted mode on an unweighted instance, and
// kInvalidArgument for an unbounded z.
Assignment GreedySwap(const ReviewInstance& instance, const SolveParams& params,
                      GreedySwapStats* stats = nullptr);

// Runs the same loop starting from `start` instead of the empty set. `start`
// must respect both load limits and be z-cycle-free (kInvalidArgument
// otherwise). Used to repair relaxation solutions.
Assignment GreedySwapFrom(const ReviewInstance& instance, const SolveParams& params,
                          const Assignment& start, GreedySwapStats* stats = nullptr);

}  // namespace cfreview

#endif  // CFREVIEW_HEURISTICS_H_
