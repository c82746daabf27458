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

// cfreview: command-line front end.
//
//   cfreview solve --instance I --params c,d,z --solver S [--weighted] --out A
//   cfreview audit --instance I --assignment A --z Z [--out R] [--csv E]
//   cfreview check --instance I --params c,d,z
//   cfreview generate <random|sat|pad|mis|2in4|to-weights|sample|
//                      synthetic-dataset> ... --out F
//   cfreview experiment --spec S [--out DIR]
//
// Exit codes: 0 ok, 2 infeasible or heuristic stuck, 3 budget exhausted,
// 4 precondition fault or bad usage, 5 I/O or format error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cfreview/cycles.h"
#include "cfreview/dataset.h"
#include "cfreview/errors.h"
#include "cfreview/exact.h"
#include "cfreview/experiment.h"
#include "cfreview/generators.h"
#include "cfreview/guarantees.h"
#include "cfreview/heuristics.h"
#include "cfreview/instance.h"
#include "cfreview/io.h"
#include "json.hpp"

namespace cfreview {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitBudget = 3;
constexpr int kExitPrecondition = 4;
constexpr int kExitIo = 5;

int ExitCodeFor(FaultKind kind) {
  switch (kind) {
    case FaultKind::kStuck:
    case FaultKind::kSwapExhausted:
      return kExitInfeasible;
    case FaultKind::kFormat:
    case FaultKind::kIo:
    case FaultKind::kInvalidInstance:
      return kExitIo;
    case FaultKind::kInvalidArgument:
    case FaultKind::kForeignEdge:
    case FaultKind::kNoWeights:
    case FaultKind::kOracleTooLarge:
      return kExitPrecondition;
  }
  return kExitPrecondition;
}

std::vector<std::string> Split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

int ParseInt(const std::string& text) {
  size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ReviewError(FaultKind::kInvalidArgument, "not an integer: \"" + text + "\"");
  }
  return value;
}

// "c,d,z" with z a non-negative integer or "unbounded".
SolveParams ParseParams(const std::string& text, bool weighted) {
  const auto parts = Split(text, ',');
  if (parts.size() != 3) {
    throw ReviewError(FaultKind::kInvalidArgument, "--params expects c,d,z");
  }
  SolveParams params;
  params.c_reviewer = ParseInt(parts[0]);
  params.d_paper = ParseInt(parts[1]);
  const auto z = CycleBound::Parse(parts[2]);
  if (!z) throw ReviewError(FaultKind::kInvalidArgument, "bad z \"" + parts[2] + "\"");
  if (params.c_reviewer < 0 || params.d_paper < 0) {
    throw ReviewError(FaultKind::kInvalidArgument, "c and d must be non-negative");
  }
  params.z = *z;
  params.weighted = weighted;
  return params;
}

// Clauses separated by ';', literals by ','.
template <size_t N>
std::vector<std::array<int, N>> ParseClauses(const std::string& text, int* max_var) {
  std::vector<std::array<int, N>> clauses;
  *max_var = 0;
  for (const auto& clause : Split(text, ';')) {
    if (clause.empty()) continue;
    const auto lits = Split(clause, ',');
    if (lits.size() != N) {
      throw ReviewError(FaultKind::kInvalidArgument,
                        "clause \"" + clause + "\" needs " + std::to_string(N) + " literals");
    }
    std::array<int, N> c{};
    for (size_t i = 0; i < N; ++i) {
      c[i] = ParseInt(lits[i]);
      if (c[i] == 0) throw ReviewError(FaultKind::kInvalidArgument, "literal 0");
      *max_var = std::max(*max_var, std::abs(c[i]));
    }
    clauses.push_back(c);
  }
  return clauses;
}

void Emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    WriteTextFile(path, text);
  }
}

void EmitInstance(const std::string& path, const ReviewInstance& instance) {
  Emit(path, InstanceToJson(instance.ToData()));
}

struct SolveOptions {
  std::string instance;
  std::string params;
  std::string solver = "flow";
  bool weighted = false;
  int64_t budget_nodes = SearchLimits{}.max_nodes;
  double budget_seconds = SearchLimits{}.max_seconds;
  std::string out;
  std::string stats;
  bool timing = false;
};

int RunSolve(const SolveOptions& o) {
  const ReviewInstance instance = ReadInstanceFile(o.instance);
  const SolveParams params = ParseParams(o.params, o.weighted);
  nlohmann::ordered_json stats;
  stats["solver"] = o.solver;
  std::optional<Assignment> assignment;
  int code = kExitOk;

  if (o.solver == "flow" || o.solver == "exact-zfree") {
    SolveResult result;
    if (o.solver == "flow") {
      result = MaxWeightAssignment(instance, params);
    } else {
      result = MaxWeightZCycleFree(instance, params,
                                   {.max_nodes = o.budget_nodes, .max_seconds = o.budget_seconds});
    }
    stats["stats"] = nlohmann::ordered_json::parse(SolveStatsToJson(result.stats, o.timing));
    if (result.stats.objective) assignment = result.assignment;
    switch (result.stats.status) {
      case SolveStatus::kOptimal:
        break;
      case SolveStatus::kInfeasible:
        code = kExitInfeasible;
        break;
      case SolveStatus::kFeasibleOnly:
      case SolveStatus::kNoSolutionWithinLimits:
        code = kExitBudget;
        break;
    }
  } else if (o.solver == "greedy-dag" || o.solver == "greedy-swap") {
    try {
      if (o.solver == "greedy-dag") {
        GreedyDagStats s;
        assignment = GreedyDag(instance, params.d_paper, &s);
        stats["operations"] = s.operations;
        stats["iterations"] = s.iterations;
        stats["conservation_held"] = s.conservation_held;
      } else {
        GreedySwapStats s;
        assignment = GreedySwap(instance, params, &s);
        stats["iterations"] = s.iterations;
        stats["additions"] = s.additions;
        stats["swaps"] = s.swaps;
      }
      stats["status"] = "ok";
      stats["objective"] = ObjectiveWeight(instance, *assignment);
    } catch (const ReviewError& e) {
      if (e.kind() != FaultKind::kStuck && e.kind() != FaultKind::kSwapExhausted) throw;
      stats["status"] = e.kind() == FaultKind::kStuck ? "stuck" : "swap-exhausted";
      if (e.paper()) stats["paper"] = instance.paper_id(*e.paper());
      if (e.iteration()) stats["iteration"] = *e.iteration();
      std::cerr << "cfreview: " << e.what() << "\n";
      code = kExitInfeasible;
    }
  } else {
    throw ReviewError(FaultKind::kInvalidArgument, "unknown solver \"" + o.solver + "\"");
  }

  if (assignment) {
    stats["valid"] = IsValidAssignment(instance, *assignment, params);
    Emit(o.out, AssignmentToJson(instance, *assignment));
  }
  if (!o.stats.empty()) Emit(o.stats, stats.dump(2) + "\n");
  if (code == kExitInfeasible && o.solver != "greedy-dag" && o.solver != "greedy-swap") {
    std::cerr << "cfreview: infeasible\n";
  } else if (code == kExitBudget) {
    std::cerr << "cfreview: budget exhausted"
              << (assignment ? ", incumbent written\n" : ", no incumbent\n");
  }
  return code;
}

struct AuditOptions {
  std::string instance;
  std::string assignment;
  std::string z;
  std::string out;
  std::string csv;
};

int RunAudit(const AuditOptions& o) {
  const ReviewInstance instance = ReadInstanceFile(o.instance);
  const Assignment assignment = ParseAssignmentJson(ReadTextFile(o.assignment), instance);
  const auto z = CycleBound::Parse(o.z);
  if (!z) throw ReviewError(FaultKind::kInvalidArgument, "bad z \"" + o.z + "\"");
  // Foreign edges are a precondition fault, not a silent skip.
  for (const auto& e : assignment.edges()) {
    if (!instance.IsQualified(e.agent, e.paper)) {
      throw ReviewError(FaultKind::kForeignEdge, "foreign edge " + instance.agent_id(e.agent) +
                                                     "/" + instance.paper_id(e.paper));
    }
  }
  const CycleReport report = FindReviewCycles(instance, assignment, *z);
  Emit(o.out, CycleReportToJson(instance, report));
  if (!o.csv.empty()) {
    Emit(o.csv, ExposureCsv(instance, report, ComputeExposure(instance, assignment)));
  }
  return kExitOk;
}

int RunCheck(const std::string& instance_path, const std::string& params_text,
             const std::string& out) {
  const ReviewInstance instance = ReadInstanceFile(instance_path);
  const SolveParams params = ParseParams(params_text, false);
  nlohmann::ordered_json doc;
  doc["prop3"] = nlohmann::ordered_json::parse(
      VerdictToJson(CheckProp3(instance, params.d_paper, params.c_reviewer)));
  if (params.z.bounded()) {
    doc["prop4"] = nlohmann::ordered_json::parse(VerdictToJson(CheckProp4(instance, params)));
    doc["thm4"] = nlohmann::ordered_json::parse(VerdictToJson(CheckThm4(instance, params)));
  }
  Emit(out, doc.dump(2) + "\n");
  return kExitOk;
}

struct GenerateOptions {
  std::string out;
  uint64_t seed = 0;
  // random
  int agents = 0, papers = 0, min_authors = 1, max_authors = 1, max_papers_per_author = 1;
  int conflicts = 0;
  std::optional<int> min_qualified_papers, min_qualified_reviewers;
  bool weighted = false;
  int64_t max_weight = 100;
  // gadgets
  std::string clauses;
  int variables = 0;
  int vertices = 0;
  std::string edges;
  std::string classes;
  // transforms
  std::string instance;
  int delta = 0;
  // sampling
  std::string dataset;
  int n_papers = 0;
  double r_ap = 0.5;
  int64_t weight_scale = 1'000'000;
  // synthetic dataset
  int people = 800;
  int topics = 12;
};

int RunGenerate(const std::string& which, const GenerateOptions& o) {
  if (which == "random") {
    RandomControls c;
    c.n_agents = o.agents;
    c.n_papers = o.papers;
    c.min_authors_per_paper = o.min_authors;
    c.max_authors_per_paper = o.max_authors;
    c.max_papers_per_author = o.max_papers_per_author;
    c.conflicts_per_agent = o.conflicts;
    c.min_qualified_papers = o.min_qualified_papers;
    c.min_qualified_reviewers = o.min_qualified_reviewers;
    c.weighted = o.weighted;
    c.max_weight = o.max_weight;
    EmitInstance(o.out, GenRandom(c, o.seed));
  } else if (which == "sat") {
    Cnf cnf;
    int max_var = 0;
    cnf.clauses = ParseClauses<3>(o.clauses, &max_var);
    cnf.num_variables = std::max(o.variables, max_var);
    EmitInstance(o.out, GenSatGadget(cnf));
  } else if (which == "2in4") {
    TwoInFourFormula f;
    int max_var = 0;
    f.clauses = ParseClauses<4>(o.clauses, &max_var);
    f.num_variables = std::max(o.variables, max_var);
    EmitInstance(o.out, Gen2in4Gadget(f));
  } else if (which == "mis") {
    ColoredGraph g;
    g.num_vertices = o.vertices;
    for (const auto& e : Split(o.edges, ',')) {
      if (e.empty()) continue;
      const auto ends = Split(e, '-');
      if (ends.size() != 2) throw ReviewError(FaultKind::kInvalidArgument, "edge \"" + e + "\"");
      g.edges.emplace_back(ParseInt(ends[0]), ParseInt(ends[1]));
    }
    for (const auto& cls : Split(o.classes, ';')) {
      std::vector<int> members;
      for (const auto& v : Split(cls, ',')) members.push_back(ParseInt(v));
      g.classes.push_back(std::move(members));
    }
    EmitInstance(o.out, GenMisGadget(g));
  } else if (which == "pad") {
    EmitInstance(o.out, PadMinDegrees(ReadInstanceFile(o.instance), o.delta));
  } else if (which == "to-weights") {
    EmitInstance(o.out, QualificationsToWeights(ReadInstanceFile(o.instance)));
  } else if (which == "sample") {
    const SimilarityDataset ds = LoadDataset(o.dataset);
    EmitInstance(o.out, SampleInstance(ds, {.n_papers = o.n_papers,
                                            .r_ap = o.r_ap,
                                            .seed = o.seed,
                                            .weight_scale = o.weight_scale}));
  } else if (which == "synthetic-dataset") {
    if (o.out.empty()) throw ReviewError(FaultKind::kInvalidArgument, "--out DIR required");
    SyntheticDatasetSpec spec;
    spec.n_papers = o.papers > 0 ? o.papers : spec.n_papers;
    spec.n_people = o.people;
    spec.max_authors_per_paper = o.max_authors;
    spec.topics = o.topics;
    spec.seed = o.seed;
    WriteDataset(MakeSyntheticDataset(spec), o.out);
  } else {
    throw ReviewError(FaultKind::kInvalidArgument, "unknown generator \"" + which + "\"");
  }
  return kExitOk;
}

int RunExperimentCommand(const std::string& spec_path, const std::string& out) {
  ExperimentSpec spec = ParseExperimentSpec(ReadTextFile(spec_path));
  if (!out.empty()) spec.output_dir = out;
  if (spec.output_dir.empty()) {
    throw ReviewError(FaultKind::kInvalidArgument, "no output directory (use --out)");
  }
  const ExperimentOutput output = RunExperiment(spec);
  WriteExperimentOutput(output, spec.output_dir);
  return kExitOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"Conflict-free peer review assignment."};
  app.require_subcommand(1);

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Compute a review assignment.");
  solve_cmd->add_option("--instance", solve.instance, "Instance JSON")->required();
  solve_cmd->add_option("--params", solve.params, "c,d,z (z may be 'unbounded')")->required();
  solve_cmd->add_option("--solver", solve.solver, "Solver")
      ->check(CLI::IsMember({"flow", "exact-zfree", "greedy-dag", "greedy-swap"}));
  solve_cmd->add_flag("--weighted", solve.weighted, "Maximize instance weights");
  solve_cmd->add_option("--budget-nodes", solve.budget_nodes, "Branch-and-bound node budget");
  solve_cmd->add_option("--budget-seconds", solve.budget_seconds, "Wall-clock budget");
  solve_cmd->add_option("--out", solve.out, "Assignment output (default stdout)");
  solve_cmd->add_option("--stats", solve.stats, "Stats JSON output");
  solve_cmd->add_flag("--timing", solve.timing, "Include wall time in stats");

  AuditOptions audit;
  auto* audit_cmd = app.add_subcommand("audit", "Report review cycles of an assignment.");
  audit_cmd->add_option("--instance", audit.instance, "Instance JSON")->required();
  audit_cmd->add_option("--assignment", audit.assignment, "Assignment JSON")->required();
  audit_cmd->add_option("--z", audit.z, "Longest cycle length, or 'unbounded'")->required();
  audit_cmd->add_option("--out", audit.out, "Report JSON output (default stdout)");
  audit_cmd->add_option("--csv", audit.csv, "Per-vertex exposure CSV output");

  std::string check_instance, check_params, check_out;
  auto* check_cmd = app.add_subcommand("check", "Evaluate the guarantee conditions.");
  check_cmd->add_option("--instance", check_instance, "Instance JSON")->required();
  check_cmd->add_option("--params", check_params, "c,d,z")->required();
  check_cmd->add_option("--out", check_out, "Verdict JSON output (default stdout)");

  GenerateOptions gen;
  std::string generator;
  auto* gen_cmd = app.add_subcommand("generate", "Write a generated instance.");
  gen_cmd->add_option("generator", generator, "Generator name")
      ->required()
      ->check(CLI::IsMember({"random", "sat", "pad", "mis", "2in4", "to-weights", "sample",
                             "synthetic-dataset"}));
  gen_cmd->add_option("--out", gen.out, "Output path (default stdout)");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--agents", gen.agents, "random: agent count");
  gen_cmd->add_option("--papers", gen.papers, "random, synthetic-dataset: paper count");
  gen_cmd->add_option("--min-authors", gen.min_authors, "random: authors per paper, low");
  gen_cmd->add_option("--max-authors", gen.max_authors, "authors per paper, high");
  gen_cmd->add_option("--max-papers-per-author", gen.max_papers_per_author, "random");
  gen_cmd->add_option("--conflicts", gen.conflicts, "random: extra non-qualifications per agent");
  gen_cmd->add_option("--min-qualified-papers", gen.min_qualified_papers, "random");
  gen_cmd->add_option("--min-qualified-reviewers", gen.min_qualified_reviewers, "random");
  gen_cmd->add_flag("--weighted", gen.weighted, "random: draw edge weights");
  gen_cmd->add_option("--max-weight", gen.max_weight, "random: largest weight");
  gen_cmd->add_option("--clauses", gen.clauses, "sat, 2in4: e.g. \"1,2,-3;-1,2,3\"");
  gen_cmd->add_option("--variables", gen.variables, "sat, 2in4: variable count");
  gen_cmd->add_option("--vertices", gen.vertices, "mis: vertex count");
  gen_cmd->add_option("--edges", gen.edges, "mis: e.g. \"0-1,1-2\"");
  gen_cmd->add_option("--classes", gen.classes, "mis: e.g. \"0;1,2\"");
  gen_cmd->add_option("--instance", gen.instance, "pad, to-weights: input instance");
  gen_cmd->add_option("--delta", gen.delta, "pad: minimum degree");
  gen_cmd->add_option("--dataset", gen.dataset, "sample: dataset directory");
  gen_cmd->add_option("--n-papers", gen.n_papers, "sample: papers to draw");
  gen_cmd->add_option("--r-ap", gen.r_ap, "sample: agent/paper ratio");
  gen_cmd->add_option("--weight-scale", gen.weight_scale, "sample: similarity multiplier");
  gen_cmd->add_option("--people", gen.people, "synthetic-dataset: person count");
  gen_cmd->add_option("--topics", gen.topics, "synthetic-dataset: latent dimensions");

  std::string spec_path, exp_out;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a batch experiment.");
  exp_cmd->add_option("--spec", spec_path, "Experiment spec JSON")->required();
  exp_cmd->add_option("--out", exp_out, "Output directory (overrides the spec)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitPrecondition;
  }

  try {
    if (*solve_cmd) return RunSolve(solve);
    if (*audit_cmd) return RunAudit(audit);
    if (*check_cmd) return RunCheck(check_instance, check_params, check_out);
    if (*gen_cmd) return RunGenerate(generator, gen);
    if (*exp_cmd) return RunExperimentCommand(spec_path, exp_out);
  } catch (const ReviewError& e) {
    std::cerr << "cfreview: " << FaultKindName(e.kind()) << ": " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "cfreview: internal error: " << e.what() << "\n";
    return 1;
  }
  return kExitPrecondition;
}

}  // namespace
}  // namespace cfreview

int main(int argc, char** argv) { return cfreview::Main(argc, argv); }
