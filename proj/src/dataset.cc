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

#include "cfreview/dataset.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "cfreview/errors.h"
#include "cfreview/io.h"
#include "cfreview/rng.h"

namespace cfreview {
namespace {

[[noreturn]] void Bad(const std::string& file, int line, const std::string& what) {
  throw ReviewError(FaultKind::kFormat,
                    file + ":" + std::to_string(line) + ": " + what);
}

// Splits one CSV record. Double-quoted fields may contain commas; "" inside
// quotes is a literal quote.
bool SplitCsv(std::string_view line, std::vector<std::string>& out) {
  out.clear();
  std::string field;
  bool quoted = false, was_quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"' && field.empty() && !was_quoted) {
      quoted = was_quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else {
      field.push_back(ch);
    }
  }
  if (quoted) return false;
  out.push_back(std::move(field));
  return true;
}

// Calls fn(line_number, fields) for each data row after checking the header.
template <typename Fn>
void ForEachRow(const std::string& path, const std::vector<std::string>& header, Fn fn) {
  std::istringstream in(ReadTextFile(path));
  std::string line;
  std::vector<std::string> fields;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header) {
      if (line.empty()) continue;
      if (!SplitCsv(line, fields) || fields != header) {
        Bad(path, line_no, "bad header, expected " + [&] {
          std::string h;
          for (const auto& f : header) h += (h.empty() ? "" : ",") + f;
          return h;
        }());
      }
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    if (!SplitCsv(line, fields) || fields.size() != header.size()) {
      Bad(path, line_no, "malformed row");
    }
    for (const auto& f : fields) {
      if (f.empty()) Bad(path, line_no, "empty field");
    }
    fn(line_no, fields);
  }
  if (!have_header) Bad(path, line_no, "no header");
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  return out + "\"";
}

}  // namespace

double SimilarityDataset::Similarity(int person, int paper) const {
  auto it = similarity.find(Key(person, paper));
  return it == similarity.end() ? 0.0 : it->second;
}

SimilarityDataset LoadDatasetFiles(const std::string& authorship_csv,
                                   const std::string& similarity_csv) {
  SimilarityDataset ds;
  std::unordered_map<std::string, int> paper_index, person_index;
  std::unordered_set<uint64_t> seen;
  ForEachRow(authorship_csv, {"paper_id", "author_id"},
             [&](int line, const std::vector<std::string>& f) {
               auto [pit, new_paper] =
                   paper_index.emplace(f[0], static_cast<int>(ds.papers.size()));
               if (new_paper) {
                 ds.papers.push_back(f[0]);
                 ds.paper_authors.emplace_back();
               }
               auto [ait, new_person] =
                   person_index.emplace(f[1], static_cast<int>(ds.people.size()));
               if (new_person) ds.people.push_back(f[1]);
               if (!seen.insert(SimilarityDataset::Key(ait->second, pit->second)).second) {
                 Bad(authorship_csv, line, "duplicate (paper, author) row");
               }
               ds.paper_authors[pit->second].push_back(ait->second);
             });
  ds.num_authors = static_cast<int>(ds.people.size());

  ForEachRow(similarity_csv, {"reviewer_id", "paper_id", "similarity"},
             [&](int line, const std::vector<std::string>& f) {
               auto pit = paper_index.find(f[1]);
               if (pit == paper_index.end()) Bad(similarity_csv, line, "unknown paper " + f[1]);
               auto [ait, new_person] =
                   person_index.emplace(f[0], static_cast<int>(ds.people.size()));
               if (new_person) ds.people.push_back(f[0]);
               double score = 0;
               const char* end = f[2].data() + f[2].size();
               auto [ptr, ec] = std::from_chars(f[2].data(), end, score);
               if (ec != std::errc() || ptr != end || !std::isfinite(score)) {
                 Bad(similarity_csv, line, "not a number: " + f[2]);
               }
               if (score < 0.0 || score > 1.0) Bad(similarity_csv, line, "score out of range");
               if (!ds.similarity.emplace(SimilarityDataset::Key(ait->second, pit->second), score)
                        .second) {
                 Bad(similarity_csv, line, "duplicate (reviewer, paper) row");
               }
             });
  return ds;
}

SimilarityDataset LoadDataset(const std::string& directory) {
  const std::filesystem::path dir(directory);
  return LoadDatasetFiles((dir / "authorship.csv").string(), (dir / "similarity.csv").string());
}

void WriteDataset(const SimilarityDataset& ds, const std::string& directory) {
  const std::filesystem::path dir(directory);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ReviewError(FaultKind::kIo, "cannot create " + directory);
  std::string authorship = "paper_id,author_id\n";
  for (size_t p = 0; p < ds.papers.size(); ++p) {
    for (int a : ds.paper_authors[p]) {
      authorship += CsvField(ds.papers[p]) + "," + CsvField(ds.people[a]) + "\n";
    }
  }
  WriteTextFile((dir / "authorship.csv").string(), authorship);
  std::string similarity = "reviewer_id,paper_id,similarity\n";
  char buf[32];
  for (size_t r = 0; r < ds.people.size(); ++r) {
    for (size_t p = 0; p < ds.papers.size(); ++p) {
      auto it = ds.similarity.find(SimilarityDataset::Key(static_cast<int>(r), static_cast<int>(p)));
      if (it == ds.similarity.end()) continue;
      std::snprintf(buf, sizeof(buf), "%.6f", it->second);
      similarity += CsvField(ds.people[r]) + "," + CsvField(ds.papers[p]) + "," + buf + "\n";
    }
  }
  WriteTextFile((dir / "similarity.csv").string(), similarity);
}

int64_t RoundHalfUp(double x) { return static_cast<int64_t>(std::floor(x + 0.5)); }

int SampledAgentCount(const SampleSpec& spec) {
  return static_cast<int>(RoundHalfUp(spec.r_ap * spec.n_papers));
}

ReviewInstance SampleInstance(const SimilarityDataset& ds, const SampleSpec& spec) {
  const int total = static_cast<int>(ds.papers.size());
  if (spec.n_papers < 0 || spec.n_papers > total) {
    throw ReviewError(FaultKind::kInvalidArgument,
                      "cannot sample " + std::to_string(spec.n_papers) + " of " +
                          std::to_string(total) + " papers");
  }
  if (!(spec.r_ap >= 0.0) || spec.weight_scale < 0) {
    throw ReviewError(FaultKind::kInvalidArgument, "r_AP and weight_scale must be non-negative");
  }
  SplitMix64 rng(spec.seed);
  const std::vector<int> papers = SampleWithoutReplacement(rng, total, spec.n_papers);

  std::vector<char> in_pool(ds.people.size(), 0);
  for (int p : papers) {
    for (int a : ds.paper_authors[p]) in_pool[a] = 1;
  }
  std::vector<int> pool;
  for (int a = 0; a < static_cast<int>(in_pool.size()); ++a) {
    if (in_pool[a]) pool.push_back(a);
  }
  const int n_agents = SampledAgentCount(spec);
  if (n_agents > static_cast<int>(pool.size())) {
    throw ReviewError(FaultKind::kInvalidArgument,
                      "author pool of " + std::to_string(pool.size()) +
                          " is smaller than the requested " + std::to_string(n_agents) +
                          " agents");
  }
  std::vector<int> agents;
  for (int i : SampleWithoutReplacement(rng, static_cast<int>(pool.size()), n_agents)) {
    agents.push_back(pool[i]);
  }

  InstanceBuilder b;
  b.MarkWeighted();
  std::vector<int> agent_of(ds.people.size(), -1);
  for (int a : agents) agent_of[a] = b.AddAgent(ds.people[a]);
  std::vector<std::vector<bool>> authors(agents.size(), std::vector<bool>(papers.size(), false));
  for (size_t i = 0; i < papers.size(); ++i) {
    const int p = b.AddPaper(ds.papers[papers[i]]);
    for (int person : ds.paper_authors[papers[i]]) {
      if (agent_of[person] < 0) continue;
      b.AddAuthor(p, agent_of[person]);
      authors[agent_of[person]][i] = true;
    }
  }
  for (size_t a = 0; a < agents.size(); ++a) {
    for (size_t i = 0; i < papers.size(); ++i) {
      if (authors[a][i]) continue;
      const double sim = ds.Similarity(agents[a], papers[i]);
      b.AddQualification(static_cast<int>(a), static_cast<int>(i),
                         RoundHalfUp(sim * static_cast<double>(spec.weight_scale)));
    }
  }
  return b.Build();
}

SimilarityDataset MakeSyntheticDataset(const SyntheticDatasetSpec& spec) {
  if (spec.n_papers < 0 || spec.n_people < 1 || spec.max_authors_per_paper < 1 ||
      spec.topics < 1) {
    throw ReviewError(FaultKind::kInvalidArgument, "synthetic dataset: bad spec");
  }
  SplitMix64 rng(spec.seed);
  const int k = spec.topics;
  auto random_vector = [&] {
    std::vector<double> v(k);
    for (auto& x : v) {
      const double u = rng.UniformDouble();
      x = u * u * u;
    }
    return v;
  };
  std::vector<std::vector<double>> person(spec.n_people);
  for (auto& v : person) v = random_vector();

  SimilarityDataset ds;
  std::vector<int> person_slot(spec.n_people, -1);
  std::vector<std::vector<double>> paper_vec;
  for (int p = 0; p < spec.n_papers; ++p) {
    ds.papers.push_back("paper" + std::to_string(p + 1));
    const int count = 1 + static_cast<int>(rng.UniformBelow(
                              static_cast<uint64_t>(std::min(spec.max_authors_per_paper,
                                                             spec.n_people))));
    // Skewed author choice: low person numbers publish more.
    std::vector<int> chosen;
    while (static_cast<int>(chosen.size()) < count) {
      const double u = rng.UniformDouble();
      const int who = static_cast<int>(u * u * spec.n_people);
      if (std::find(chosen.begin(), chosen.end(), who) == chosen.end()) chosen.push_back(who);
    }
    std::vector<double> v = random_vector();
    for (auto& x : v) x *= 0.5;
    std::vector<int> authors;
    for (int who : chosen) {
      for (int t = 0; t < k; ++t) v[t] += person[who][t] / count;
      if (person_slot[who] < 0) {
        person_slot[who] = static_cast<int>(ds.people.size());
        ds.people.push_back("author" + std::to_string(who + 1));
      }
      authors.push_back(person_slot[who]);
    }
    ds.paper_authors.push_back(std::move(authors));
    paper_vec.push_back(std::move(v));
  }
  ds.num_authors = static_cast<int>(ds.people.size());
  std::vector<int> slot_person(ds.people.size());
  for (int who = 0; who < spec.n_people; ++who) {
    if (person_slot[who] >= 0) slot_person[person_slot[who]] = who;
  }
  auto norm = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  };
  for (size_t r = 0; r < ds.people.size(); ++r) {
    const auto& pv = person[slot_person[r]];
    const double pn = norm(pv);
    for (size_t p = 0; p < ds.papers.size(); ++p) {
      double dot = 0;
      for (int t = 0; t < k; ++t) dot += pv[t] * paper_vec[p][t];
      const double denom = pn * norm(paper_vec[p]);
      double sim = denom > 0 ? dot / denom : 0.0;
      sim = std::min(1.0, std::max(0.0, std::round(sim * 1e6) / 1e6));
      ds.similarity.emplace(SimilarityDataset::Key(static_cast<int>(r), static_cast<int>(p)), sim);
    }
  }
  return ds;
}

}  // namespace cfreview
