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

#include "cfreview/experiment.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <thread>

#include "cfreview/cycles.h"
#include "cfreview/errors.h"
#include "cfreview/exact.h"
#include "cfreview/heuristics.h"
#include "cfreview/io.h"
#include "cfreview/rng.h"
#include "json.hpp"

namespace cfreview {
namespace {

using nlohmann::json;

[[noreturn]] void Bad(const std::string& what) {
  throw ReviewError(FaultKind::kFormat, "experiment spec: " + what);
}

void RejectUnknown(const json& obj, const std::set<std::string>& known, const char* where) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) Bad(std::string("unknown field \"") + key + "\" in " + where);
  }
}

template <typename T>
T Get(const json& obj, const char* key, const char* where) {
  if (!obj.contains(key)) Bad(std::string("missing \"") + key + "\" in " + where);
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    Bad(std::string("bad value for \"") + key + "\" in " + where);
  }
}

template <typename T>
T GetOr(const json& obj, const char* key, T fallback, const char* where) {
  return obj.contains(key) ? Get<T>(obj, key, where) : fallback;
}

std::string Fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

struct Cell {
  std::string instance_id;
  int n_papers = 0;
  double r_ap = 0.0;
  int repetition = 0;
  uint64_t seed = 0;
  std::string file;
};

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

void FillExposure(const ReviewInstance& instance, const Assignment& assignment, ResultRow& row) {
  const Exposure exposure = ComputeExposure(instance, assignment);
  row.agent_fraction = std::array<double, 3>{
      exposure.AgentFraction(2), exposure.AgentFraction(3), exposure.AgentFraction(4)};
  row.paper_fraction = std::array<double, 3>{
      exposure.PaperFraction(2), exposure.PaperFraction(3), exposure.PaperFraction(4)};
}

std::vector<ResultRow> RunCell(const ExperimentSpec& spec, const Cell& cell,
                               const SimilarityDataset* dataset) {
  std::vector<ResultRow> rows;
  auto base_row = [&](const SolverSpec& s) {
    ResultRow row;
    row.instance_id = cell.instance_id;
    row.n_papers = cell.n_papers;
    row.r_ap = cell.r_ap;
    row.repetition = cell.repetition;
    row.solver = s.Name();
    row.z = s.kind == SolverKind::kOptimal ? 0 : s.z;
    return row;
  };

  ReviewInstance instance;
  try {
    if (dataset) {
      instance = SampleInstance(*dataset, {.n_papers = cell.n_papers,
                                           .r_ap = cell.r_ap,
                                           .seed = cell.seed,
                                           .weight_scale = spec.weight_scale});
    } else {
      instance = ReadInstanceFile(cell.file);
    }
  } catch (const ReviewError&) {
    for (const auto& s : spec.solvers) {
      ResultRow row = base_row(s);
      row.status = "instance-error";
      rows.push_back(std::move(row));
    }
    return rows;
  }
  SolveParams params{.c_reviewer = spec.c_reviewer,
                     .d_paper = spec.d_paper,
                     .z = CycleBound::Unbounded(),
                     .weighted = instance.weighted()};
  const auto opt_start = std::chrono::steady_clock::now();
  const SolveResult optimal = MaxWeightAssignment(instance, params);
  const double opt_seconds = Seconds(opt_start);
  const std::optional<Weight> reference = optimal.stats.objective;

  for (const auto& s : spec.solvers) {
    ResultRow row = base_row(s);
    if (!dataset) row.n_papers = instance.num_papers();
    std::optional<Assignment> assignment;
    const auto start = std::chrono::steady_clock::now();
    switch (s.kind) {
      case SolverKind::kOptimal:
        row.status = SolveStatusName(optimal.stats.status);
        if (optimal.stats.objective) assignment = optimal.assignment;
        row.wall_seconds = opt_seconds;
        break;
      case SolverKind::kOptimalZFree: {
        SolveParams p = params;
        p.z = CycleBound::AtMost(s.z);
        const SolveResult r = MaxWeightZCycleFree(
            instance, p, {.max_nodes = spec.budget_nodes, .max_seconds = spec.budget_seconds});
        row.status = SolveStatusName(r.stats.status);
        if (r.stats.objective) assignment = r.assignment;
        row.wall_seconds = Seconds(start);
        break;
      }
      case SolverKind::kHeuristicZFree: {
        SolveParams p = params;
        p.z = CycleBound::AtMost(s.z);
        try {
          assignment = GreedySwap(instance, p);
          row.status = "ok";
        } catch (const ReviewError& e) {
          if (e.kind() != FaultKind::kSwapExhausted) throw;
          row.status = "swap-exhausted";
        }
        row.wall_seconds = Seconds(start);
        break;
      }
    }
    if (assignment) {
      row.weight = ObjectiveWeight(instance, *assignment);
      if (reference) {
        row.normalized_weight = *reference == 0 ? 1.0
                                                : static_cast<double>(*row.weight) /
                                                      static_cast<double>(*reference);
      }
      FillExposure(instance, *assignment, row);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string ResultsCsv(const std::vector<ResultRow>& rows) {
  std::string out = ResultsCsvHeader();
  out += '\n';
  for (const auto& r : rows) {
    out += r.instance_id + ',' + std::to_string(r.n_papers) + ',' + Fixed(r.r_ap) + ',' +
           std::to_string(r.repetition) + ',' + r.solver + ',' + std::to_string(r.z) + ',' +
           r.status + ',' + (r.weight ? std::to_string(*r.weight) : "") + ',' +
           (r.normalized_weight ? Fixed(*r.normalized_weight) : "");
    for (const auto* f : {&r.agent_fraction, &r.paper_fraction}) {
      for (int i = 0; i < 3; ++i) out += ',' + (*f ? Fixed((**f)[i]) : std::string());
    }
    out += '\n';
  }
  return out;
}

std::string TimingsCsv(const std::vector<ResultRow>& rows) {
  std::string out = "instance_id,solver,z,wall_seconds\n";
  for (const auto& r : rows) {
    out += r.instance_id + ',' + r.solver + ',' + std::to_string(r.z) + ',' +
           Fixed(r.wall_seconds) + '\n';
  }
  return out;
}

std::string SummaryJson(const std::vector<ResultRow>& rows) {
  struct Acc {
    int rows = 0, solved = 0, normalized = 0;
    double weight = 0, norm = 0;
    std::array<double, 3> agents{}, papers{};
    std::map<std::string, int> statuses;
  };
  using Key = std::tuple<int, double, std::string, int>;
  std::vector<Key> order;
  std::map<Key, Acc> cells;
  for (const auto& r : rows) {
    const Key key{r.n_papers, r.r_ap, r.solver, r.z};
    auto [it, fresh] = cells.try_emplace(key);
    if (fresh) order.push_back(key);
    Acc& a = it->second;
    ++a.rows;
    ++a.statuses[r.status];
    if (r.weight) {
      ++a.solved;
      a.weight += static_cast<double>(*r.weight);
      for (int i = 0; i < 3; ++i) {
        a.agents[i] += (*r.agent_fraction)[i];
        a.papers[i] += (*r.paper_fraction)[i];
      }
    }
    if (r.normalized_weight) {
      ++a.normalized;
      a.norm += *r.normalized_weight;
    }
  }
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& key : order) {
    const Acc& a = cells.at(key);
    nlohmann::ordered_json cell;
    cell["n_papers"] = std::get<0>(key);
    cell["r_ap"] = std::get<1>(key);
    cell["solver"] = std::get<2>(key);
    cell["z"] = std::get<3>(key);
    cell["rows"] = a.rows;
    cell["solved"] = a.solved;
    cell["statuses"] = a.statuses;
    auto mean = [](double sum, int n) {
      return n ? nlohmann::ordered_json(sum / n) : nlohmann::ordered_json(nullptr);
    };
    cell["mean_weight"] = mean(a.weight, a.solved);
    cell["mean_normalized_weight"] = mean(a.norm, a.normalized);
    for (int i = 0; i < 3; ++i) {
      cell["mean_agents_le" + std::to_string(i + 2)] = mean(a.agents[i], a.solved);
    }
    for (int i = 0; i < 3; ++i) {
      cell["mean_papers_le" + std::to_string(i + 2)] = mean(a.papers[i], a.solved);
    }
    out.push_back(std::move(cell));
  }
  return out.dump(2) + "\n";
}

}  // namespace

std::string SolverSpec::Name() const {
  switch (kind) {
    case SolverKind::kOptimal:
      return "optimal";
    case SolverKind::kOptimalZFree:
      return "optimal-zfree";
    case SolverKind::kHeuristicZFree:
      return "heuristic-zfree";
  }
  return "unknown";
}

const char* ResultsCsvHeader() {
  return "instance_id,n_papers,r_ap,repetition,solver,z,status,weight,normalized_weight,"
         "agents_le2,agents_le3,agents_le4,papers_le2,papers_le3,papers_le4";
}

ExperimentSpec ParseExperimentSpec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    Bad(e.what());
  }
  if (!doc.is_object()) Bad("expected a JSON object");
  RejectUnknown(doc,
                {"source", "n_papers", "r_ap", "weight_scale", "solvers", "c", "d",
                 "repetitions", "seed_base", "budget_nodes", "budget_seconds", "threads",
                 "output_dir"},
                "spec");
  ExperimentSpec spec;
  const json source = Get<json>(doc, "source", "spec");
  if (!source.is_object()) Bad("source must be an object");
  const auto kind = Get<std::string>(source, "kind", "source");
  if (kind == "dataset") {
    RejectUnknown(source, {"kind", "path"}, "source");
    spec.source = ExperimentSpec::SourceKind::kDataset;
    spec.dataset_path = Get<std::string>(source, "path", "source");
  } else if (kind == "synthetic") {
    RejectUnknown(source, {"kind", "dataset"}, "source");
    spec.source = ExperimentSpec::SourceKind::kSynthetic;
    const json ds = GetOr<json>(source, "dataset", json::object(), "source");
    RejectUnknown(ds, {"n_papers", "n_people", "max_authors_per_paper", "topics", "seed"},
                  "source.dataset");
    auto& s = spec.synthetic;
    s.n_papers = GetOr<int>(ds, "n_papers", s.n_papers, "source.dataset");
    s.n_people = GetOr<int>(ds, "n_people", s.n_people, "source.dataset");
    s.max_authors_per_paper =
        GetOr<int>(ds, "max_authors_per_paper", s.max_authors_per_paper, "source.dataset");
    s.topics = GetOr<int>(ds, "topics", s.topics, "source.dataset");
    s.seed = GetOr<uint64_t>(ds, "seed", s.seed, "source.dataset");
  } else if (kind == "files") {
    RejectUnknown(source, {"kind", "paths"}, "source");
    spec.source = ExperimentSpec::SourceKind::kFiles;
    spec.files = Get<std::vector<std::string>>(source, "paths", "source");
  } else {
    Bad("unknown source kind \"" + kind + "\"");
  }
  if (spec.source != ExperimentSpec::SourceKind::kFiles) {
    spec.n_papers = Get<std::vector<int>>(doc, "n_papers", "spec");
    spec.r_ap = Get<std::vector<double>>(doc, "r_ap", "spec");
    if (spec.n_papers.empty() || spec.r_ap.empty()) Bad("n_papers and r_ap must be nonempty");
  }
  spec.weight_scale = GetOr<int64_t>(doc, "weight_scale", spec.weight_scale, "spec");
  const json solvers = Get<json>(doc, "solvers", "spec");
  if (!solvers.is_array() || solvers.empty()) Bad("solvers must be a nonempty list");
  for (const auto& s : solvers) {
    if (!s.is_object()) Bad("solver entries must be objects");
    RejectUnknown(s, {"kind", "z"}, "solver");
    SolverSpec out;
    const auto name = Get<std::string>(s, "kind", "solver");
    if (name == "optimal") {
      out.kind = SolverKind::kOptimal;
      if (s.contains("z")) Bad("solver \"optimal\" takes no z");
    } else if (name == "optimal-zfree" || name == "heuristic-zfree") {
      out.kind = name == "optimal-zfree" ? SolverKind::kOptimalZFree
                                         : SolverKind::kHeuristicZFree;
      out.z = Get<int>(s, "z", "solver");
      if (out.z < 1) Bad("solver z must be positive");
    } else {
      Bad("unknown solver kind \"" + name + "\"");
    }
    spec.solvers.push_back(out);
  }
  spec.c_reviewer = Get<int>(doc, "c", "spec");
  spec.d_paper = Get<int>(doc, "d", "spec");
  spec.repetitions = GetOr<int>(doc, "repetitions", 1, "spec");
  spec.seed_base = GetOr<uint64_t>(doc, "seed_base", 0, "spec");
  spec.budget_nodes = GetOr<int64_t>(doc, "budget_nodes", spec.budget_nodes, "spec");
  spec.budget_seconds = GetOr<double>(doc, "budget_seconds", spec.budget_seconds, "spec");
  spec.threads = GetOr<int>(doc, "threads", 0, "spec");
  spec.output_dir = GetOr<std::string>(doc, "output_dir", "", "spec");
  if (spec.repetitions < 1) Bad("repetitions must be at least 1");
  if (spec.c_reviewer < 0 || spec.d_paper < 0) Bad("c and d must be non-negative");
  return spec;
}

ExperimentOutput RunExperiment(const ExperimentSpec& spec) {
  std::optional<SimilarityDataset> dataset;
  if (spec.source == ExperimentSpec::SourceKind::kDataset) {
    if (!std::filesystem::is_directory(spec.dataset_path)) {
      throw ReviewError(FaultKind::kIo, "dataset missing: " + spec.dataset_path);
    }
    dataset = LoadDataset(spec.dataset_path);
  } else if (spec.source == ExperimentSpec::SourceKind::kSynthetic) {
    dataset = MakeSyntheticDataset(spec.synthetic);
  } else {
    for (const auto& f : spec.files) {
      if (!std::filesystem::is_regular_file(f)) {
        throw ReviewError(FaultKind::kIo, "instance file missing: " + f);
      }
    }
  }

  std::vector<Cell> cells;
  if (dataset) {
    for (int n : spec.n_papers) {
      for (double r : spec.r_ap) {
        for (int rep = 0; rep < spec.repetitions; ++rep) {
          Cell c;
          char id[96];
          std::snprintf(id, sizeof(id), "np%d_r%g_rep%d", n, r, rep);
          c.instance_id = id;
          c.n_papers = n;
          c.r_ap = r;
          c.repetition = rep;
          c.seed = MixSeed({spec.seed_base, static_cast<uint64_t>(n),
                            static_cast<uint64_t>(RoundHalfUp(r * 1e6)),
                            static_cast<uint64_t>(rep)});
          cells.push_back(std::move(c));
        }
      }
    }
  } else {
    for (const auto& f : spec.files) {
      for (int rep = 0; rep < spec.repetitions; ++rep) {
        Cell c;
        c.instance_id = std::filesystem::path(f).stem().string() + "_rep" + std::to_string(rep);
        c.repetition = rep;
        c.file = f;
        cells.push_back(std::move(c));
      }
    }
  }

  std::vector<std::vector<ResultRow>> results(cells.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < cells.size(); i = next++) {
      results[i] = RunCell(spec, cells[i], dataset ? &*dataset : nullptr);
    }
  };
  int threads = spec.threads > 0 ? spec.threads
                                 : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(cells.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  ExperimentOutput out;
  for (auto& rs : results) {
    for (auto& r : rs) out.rows.push_back(std::move(r));
  }
  out.results_csv = ResultsCsv(out.rows);
  out.timings_csv = TimingsCsv(out.rows);
  out.summary_json = SummaryJson(out.rows);
  return out;
}

void WriteExperimentOutput(const ExperimentOutput& output, const std::string& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw ReviewError(FaultKind::kIo, "cannot create " + directory);
  const std::filesystem::path dir(directory);
  WriteTextFile((dir / "results.csv").string(), output.results_csv);
  WriteTextFile((dir / "timings.csv").string(), output.timings_csv);
  WriteTextFile((dir / "summary.json").string(), output.summary_json);
}

}  // namespace cfreview
