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

// Instance generators: seeded random instances and the structured gadget
// families used as hard test inputs. Identifiers are human readable
// ("a_pos_x3", "p_c2_1", ...) so that solver output can be traced back to
// the formula or graph.

#ifndef CFREVIEW_GENERATORS_H_
#define CFREVIEW_GENERATORS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cfreview/instance.h"

namespace cfreview {

struct RandomControls {
  int n_agents = 0;
  int n_papers = 0;
  int min_authors_per_paper = 1;
  int max_authors_per_paper = 1;
  int max_papers_per_author = 1;
  // Non-authored papers each agent is additionally not qualified for.
  int conflicts_per_agent = 0;
  // Required minimum degrees; outputs below them are resampled.
  std::optional<int> min_qualified_papers;     // delta_A^+
  std::optional<int> min_qualified_reviewers;  // delta_P^-
  bool weighted = false;
  Weight max_weight = 100;  // weights uniform in [0, max_weight]
};

// Agents "a1".., papers "p1"... Throws ReviewError(kInvalidArgument) when no
// sample within 100 attempts meets the controls.
ReviewInstance GenRandom(const RandomControls& controls, uint64_t seed);

// CNF with exactly three literals per clause. Literals are +v / -v for
// variable v in [1, num_variables].
struct Cnf {
  int num_variables = 0;
  std::vector<std::array<int, 3>> clauses;
};

// Satisfiability gadget for c = d = 1: one agent/paper triple per variable,
// three agent/paper pairs plus two dummy agents and two dummy papers per
// clause. Requires every variable to occur at most twice positive and twice
// negative.
ReviewInstance GenSatGadget(const Cnf& cnf);

// Adds delta padding agents and papers on both sides so that every agent has
// at least delta qualifications and every paper at least delta qualified
// reviewers, without changing feasibility for c = d = 1. New edges get weight
// 0 on weighted inputs.
ReviewInstance PadMinDegrees(const ReviewInstance& instance, int delta);

struct ColoredGraph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
  // Partition of [0, num_vertices) into color classes; all nonempty.
  std::vector<std::vector<int>> classes;
};

// Multicolored-independent-set gadget for c = d = 1, z = 2. Classes are
// first padded with universal vertices to sizes n + c - 1 (c 1-based) with
// n > k. Every agent is qualified for every paper it does not author.
ReviewInstance GenMisGadget(const ColoredGraph& graph);

// Formula with four distinct literals per clause, each variable exactly
// twice positive and twice negative.
struct TwoInFourFormula {
  int num_variables = 0;
  std::vector<std::array<int, 4>> clauses;
};

// Single-author single-paper gadget with symmetric qualifications, each
// agent qualified for exactly four papers (for n >= 2 variables). Intended
// for c = d = 2, z = 3.
ReviewInstance Gen2in4Gadget(const TwoInFourFormula& formula);

// Every agent becomes qualified for every paper it does not author; original
// qualification edges get weight 1, new ones weight 0. Input must be
// unweighted.
ReviewInstance QualificationsToWeights(const ReviewInstance& instance);

}  // namespace cfreview

#endif  // CFREVIEW_GENERATORS_H_
