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

#include <gtest/gtest.h>

#include <filesystem>
#include <map>

#include "cfreview/errors.h"
#include "cfreview/experiment.h"
#include "cfreview/io.h"
#include "json.hpp"

namespace cfreview {
namespace {

const char* kSpec = R"({
  "source": {"kind": "synthetic",
             "dataset": {"n_papers": 80, "n_people": 200, "seed": 5}},
  "n_papers": [20, 30],
  "r_ap": [1.0],
  "solvers": [{"kind": "optimal"}, {"kind": "optimal-zfree", "z": 2},
              {"kind": "heuristic-zfree", "z": 2}, {"kind": "heuristic-zfree", "z": 3}],
  "c": 6, "d": 3,
  "repetitions": 2,
  "seed_base": 42,
  "budget_nodes": 20000,
  "budget_seconds": 1e9
})";

ExperimentSpec Spec(const std::string& text = kSpec) { return ParseExperimentSpec(text); }

TEST(ParseExperimentSpec, Fields) {
  const auto s = Spec();
  EXPECT_EQ(s.source, ExperimentSpec::SourceKind::kSynthetic);
  EXPECT_EQ(s.synthetic.n_papers, 80);
  EXPECT_EQ(s.n_papers, (std::vector<int>{20, 30}));
  ASSERT_EQ(s.solvers.size(), 4u);
  EXPECT_EQ(s.solvers[1].Name(), "optimal-zfree");
  EXPECT_EQ(s.solvers[3].z, 3);
  EXPECT_EQ(s.repetitions, 2);
  EXPECT_EQ(s.seed_base, 42u);
  EXPECT_EQ(s.budget_nodes, 20000);
}

TEST(ParseExperimentSpec, Rejects) {
  for (const char* bad : {
           R"({"source": {"kind": "synthetic"}, "n_papers": [5], "r_ap": [1], "c": 1, "d": 1,
               "solvers": [], "colour": 1})",
           R"({"source": {"kind": "synthetic"}, "n_papers": [5], "r_ap": [1], "c": 1, "d": 1,
               "solvers": [{"kind": "optimal", "z": 2}]})",
           R"({"source": {"kind": "synthetic"}, "n_papers": [5], "r_ap": [1], "c": 1, "d": 1,
               "solvers": [{"kind": "heuristic-zfree", "z": 0}]})",
           R"({"source": {"kind": "ftp"}, "n_papers": [5], "r_ap": [1], "c": 1, "d": 1,
               "solvers": []})",
           R"({"source": {"kind": "synthetic"}, "r_ap": [1], "c": 1, "d": 1, "solvers": []})",
           "[1, 2]", "{"}) {
    try {
      ParseExperimentSpec(bad);
      ADD_FAILURE() << bad;
    } catch (const ReviewError& e) {
      EXPECT_EQ(e.kind(), FaultKind::kFormat) << bad;
    }
  }
}

TEST(RunExperiment, RowCount) {
  auto s = Spec();
  s.solvers = {{SolverKind::kOptimal, 0}, {SolverKind::kHeuristicZFree, 2}};
  const auto out = RunExperiment(s);
  EXPECT_EQ(out.rows.size(), 8u);
  // Header plus one line per row.
  EXPECT_EQ(std::count(out.results_csv.begin(), out.results_csv.end(), '\n'), 9);
}

TEST(RunExperiment, GoldenHeader) {
  EXPECT_STREQ(ResultsCsvHeader(),
               "instance_id,n_papers,r_ap,repetition,solver,z,status,weight,normalized_weight,"
               "agents_le2,agents_le3,agents_le4,papers_le2,papers_le3,papers_le4");
  const auto out = RunExperiment(Spec());
  EXPECT_EQ(out.results_csv.substr(0, out.results_csv.find('\n')), ResultsCsvHeader());
  EXPECT_EQ(out.timings_csv.substr(0, out.timings_csv.find('\n')),
            "instance_id,solver,z,wall_seconds");
}

TEST(RunExperiment, OrderingAndMonotonicity) {
  const auto out = RunExperiment(Spec());
  ASSERT_EQ(out.rows.size(), 16u);
  std::map<std::string, std::map<std::string, const ResultRow*>> by_instance;
  for (const auto& r : out.rows) {
    by_instance[r.instance_id][r.solver + "/" + std::to_string(r.z)] = &r;
    // Exact solvers finish within the node budget here; the heuristic may
    // give up on these small dense instances, which must show in the row.
    if (r.solver == "heuristic-zfree") {
      EXPECT_TRUE(r.status == "ok" || r.status == "swap-exhausted") << r.status;
    } else {
      EXPECT_EQ(r.status, "optimal");
    }
    EXPECT_EQ(r.weight.has_value(), r.status == "ok" || r.status == "optimal");
    if (!r.agent_fraction) continue;
    const auto& a = *r.agent_fraction;
    const auto& p = *r.paper_fraction;
    EXPECT_LE(a[0], a[1]);
    EXPECT_LE(a[1], a[2]);
    EXPECT_LE(p[0], p[1]);
    EXPECT_LE(p[1], p[2]);
    if (r.solver != "optimal") {
      // Solved at z: no cycles of length <= z.
      EXPECT_EQ((*r.agent_fraction)[r.z - 2], 0.0);
    }
  }
  ASSERT_EQ(by_instance.size(), 4u);
  int chains = 0;
  for (const auto& [id, rows] : by_instance) {
    const auto* opt = rows.at("optimal/0");
    const auto* zfree = rows.at("optimal-zfree/2");
    const auto* heur = rows.at("heuristic-zfree/2");
    if (!heur->normalized_weight) continue;
    ++chains;
    EXPECT_EQ(opt->normalized_weight, 1.0);
    EXPECT_GE(*opt->normalized_weight, *zfree->normalized_weight) << id;
    EXPECT_GE(*zfree->normalized_weight, *heur->normalized_weight) << id;
    EXPECT_GE(*opt->weight, *zfree->weight);
  }
  EXPECT_EQ(chains, 4);
}

TEST(RunExperiment, Summary) {
  const auto out = RunExperiment(Spec());
  const auto doc = nlohmann::json::parse(out.summary_json);
  ASSERT_TRUE(doc.is_array());
  ASSERT_EQ(doc.size(), 8u);  // 2 sizes x 4 solvers
  for (const auto& cell : doc) {
    EXPECT_EQ(cell["rows"], 2);
    const int solved = cell["solved"].get<int>();
    EXPECT_LE(solved, 2);
    if (cell["solver"] != "heuristic-zfree") EXPECT_EQ(solved, 2);
    if (solved == 0) {
      EXPECT_TRUE(cell["mean_normalized_weight"].is_null());
      continue;
    }
    EXPECT_LE(cell["mean_normalized_weight"].get<double>(), 1.0);
    EXPECT_LE(cell["mean_agents_le2"].get<double>(), cell["mean_agents_le4"].get<double>());
  }
  EXPECT_EQ(doc[0]["solver"], "optimal");
  EXPECT_EQ(doc[0]["n_papers"], 20);
}

TEST(RunExperiment, DeterministicAcrossThreadCounts) {
  auto s = Spec();
  s.threads = 1;
  const auto a = RunExperiment(s);
  s.threads = 4;
  const auto b = RunExperiment(s);
  EXPECT_EQ(a.results_csv, b.results_csv);
  EXPECT_EQ(a.summary_json, b.summary_json);
  EXPECT_EQ(a.results_csv.find("wall"), std::string::npos);
}

TEST(RunExperiment, SeedBaseChangesInstances) {
  auto s = Spec();
  s.solvers = {{SolverKind::kOptimal, 0}};
  const auto a = RunExperiment(s);
  s.seed_base = 43;
  const auto b = RunExperiment(s);
  EXPECT_NE(a.results_csv, b.results_csv);
}

TEST(RunExperiment, FailuresAreRecorded) {
  auto s = Spec();
  s.r_ap = {0.2};  // too few agents to give every paper three reviews
  s.n_papers = {20};
  s.repetitions = 1;
  const auto out = RunExperiment(s);
  ASSERT_EQ(out.rows.size(), 4u);
  for (const auto& r : out.rows) {
    EXPECT_NE(r.status, "ok");
    EXPECT_NE(r.status, "optimal");
    EXPECT_FALSE(r.weight.has_value());
  }
  EXPECT_EQ(out.rows[0].status, "infeasible");
}

TEST(RunExperiment, MissingDatasetFaultsFirst) {
  auto s = Spec();
  s.source = ExperimentSpec::SourceKind::kDataset;
  s.dataset_path = "/nonexistent/cfreview-data";
  try {
    RunExperiment(s);
    FAIL();
  } catch (const ReviewError& e) {
    EXPECT_EQ(e.kind(), FaultKind::kIo);
  }
}

TEST(WriteExperimentOutput, Files) {
  auto s = Spec();
  s.n_papers = {20};
  s.repetitions = 1;
  const auto out = RunExperiment(s);
  const auto dir = std::filesystem::temp_directory_path() / "cfreview_experiment_test";
  std::filesystem::remove_all(dir);
  WriteExperimentOutput(out, dir.string());
  EXPECT_EQ(ReadTextFile((dir / "results.csv").string()), out.results_csv);
  EXPECT_EQ(ReadTextFile((dir / "summary.json").string()), out.summary_json);
  EXPECT_TRUE(std::filesystem::exists(dir / "timings.csv"));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace cfreview
