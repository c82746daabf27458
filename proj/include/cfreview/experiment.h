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

// Batch experiment runner.
//
// Spec file (JSON):
//   {"source": {"kind": "dataset", "path": DIR}
//            | {"kind": "synthetic", "dataset": {"n_papers": .., "n_people": ..,
//               "max_authors_per_paper": .., "topics": .., "seed": ..}}
//            | {"kind": "files", "paths": [FILE, ...]},
//    "n_papers": [150, 200], "r_ap": [0.5],        (dataset kinds only)
//    "weight_scale": 1000000,                      (optional)
//    "solvers": [{"kind": "optimal"},
//                {"kind": "optimal-zfree", "z": 2},
//                {"kind": "heuristic-zfree", "z": 2}],
//    "c": 6, "d": 3, "repetitions": 10, "seed_base": 1,
//    "budget_nodes": 1000000, "budget_seconds": 300,  (optional)
//    "threads": 0,                                    (optional, 0 = auto)
//    "output_dir": DIR}                               (optional)
//
// results.csv holds only deterministic columns; wall times go to
// timings.csv. Per-cell seeds are MixSeed(seed_base, n_P, round(r_AP * 1e6),
// repetition).

#ifndef CFREVIEW_EXPERIMENT_H_
#define CFREVIEW_EXPERIMENT_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfreview/dataset.h"

namespace cfreview {

enum class SolverKind { kOptimal, kOptimalZFree, kHeuristicZFree };

struct SolverSpec {
  SolverKind kind = SolverKind::kOptimal;
  int z = 0;  // unused for kOptimal

  std::string Name() const;
};

struct ExperimentSpec {
  enum class SourceKind { kDataset, kSynthetic, kFiles };
  SourceKind source = SourceKind::kSynthetic;
  std::string dataset_path;
  SyntheticDatasetSpec synthetic;
  std::vector<std::string> files;
  std::vector<int> n_papers;
  std::vector<double> r_ap;
  int64_t weight_scale = 1'000'000;
  std::vector<SolverSpec> solvers;
  int c_reviewer = 6;
  int d_paper = 3;
  int repetitions = 1;
  uint64_t seed_base = 0;
  int64_t budget_nodes = 1'000'000;
  double budget_seconds = 300.0;
  int threads = 0;
  std::string output_dir;
};

// Throws ReviewError(kFormat) on unknown fields or bad values.
ExperimentSpec ParseExperimentSpec(std::string_view json_text);

struct ResultRow {
  std::string instance_id;
  int n_papers = 0;
  double r_ap = 0.0;
  int repetition = 0;
  std::string solver;
  int z = 0;
  std::string status;
  std::optional<int64_t> weight;
  std::optional<double> normalized_weight;
  // Fraction of agents / papers on a review cycle of length <= 2, 3, 4.
  std::optional<std::array<double, 3>> agent_fraction;
  std::optional<std::array<double, 3>> paper_fraction;
  double wall_seconds = 0.0;
};

struct ExperimentOutput {
  std::vector<ResultRow> rows;
  std::string results_csv;
  std::string timings_csv;
  std::string summary_json;
};

const char* ResultsCsvHeader();

// Throws ReviewError(kIo) before doing any work when the dataset is missing.
ExperimentOutput RunExperiment(const ExperimentSpec& spec);
// Writes results.csv, timings.csv and summary.json into `directory`.
void WriteExperimentOutput(const ExperimentOutput& output, const std::string& directory);

}  // namespace cfreview

#endif  // CFREVIEW_EXPERIMENT_H_
