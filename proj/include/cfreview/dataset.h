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

// Similarity datasets and the sampling protocol used by the experiments.
//
// On disk a dataset is a directory with two CSV files:
//   authorship.csv  header "paper_id,author_id", one row per (paper, author)
//   similarity.csv  header "reviewer_id,paper_id,similarity", scores in [0,1]
// Papers are declared by authorship.csv, in order of first appearance.
// Similarity is sparse; missing pairs score 0.

#ifndef CFREVIEW_DATASET_H_
#define CFREVIEW_DATASET_H_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "cfreview/instance.h"

namespace cfreview {

struct SimilarityDataset {
  std::vector<std::string> papers;
  // Per paper, indices into `people`; never empty.
  std::vector<std::vector<int>> paper_authors;
  // Authors first (first appearance in authorship.csv), then reviewers that
  // author nothing.
  std::vector<std::string> people;
  int num_authors = 0;
  std::unordered_map<uint64_t, double> similarity;

  double Similarity(int person, int paper) const;
  static uint64_t Key(int person, int paper) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(person)) << 32) |
           static_cast<uint32_t>(paper);
  }
};

// Throws ReviewError(kIo) for unreadable files and kFormat, with the file
// name and line number, for malformed content.
SimilarityDataset LoadDataset(const std::string& directory);
SimilarityDataset LoadDatasetFiles(const std::string& authorship_csv,
                                   const std::string& similarity_csv);
void WriteDataset(const SimilarityDataset& dataset, const std::string& directory);

struct SampleSpec {
  int n_papers = 0;
  double r_ap = 0.5;
  uint64_t seed = 0;
  int64_t weight_scale = 1'000'000;
};

// floor(x + 0.5).
int64_t RoundHalfUp(double x);
int SampledAgentCount(const SampleSpec& spec);

// Samples n_P papers uniformly without replacement, then round(r_AP * n_P)
// agents uniformly from the authors of the sampled papers. Every agent is
// qualified for every sampled paper it did not write, with weight
// round(similarity * weight_scale). Throws kInvalidArgument when the dataset
// is too small for the request.
ReviewInstance SampleInstance(const SimilarityDataset& dataset, const SampleSpec& spec);

struct SyntheticDatasetSpec {
  int n_papers = 300;
  int n_people = 800;
  int max_authors_per_paper = 4;
  int topics = 12;
  uint64_t seed = 1;
};

// Dense stand-in with a latent-topic similarity model: people and papers get
// non-negative topic vectors, a paper's vector leans towards its authors',
// and similarity is the cosine, rounded to six decimals.
SimilarityDataset MakeSyntheticDataset(const SyntheticDatasetSpec& spec);

}  // namespace cfreview

#endif  // CFREVIEW_DATASET_H_
