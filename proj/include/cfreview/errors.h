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

#ifndef CFREVIEW_ERRORS_H_
#define CFREVIEW_ERRORS_H_

#include <optional>
#include <stdexcept>
#include <string>

namespace cfreview {

// Faults raised by library operations. Infeasibility of an optimization
// problem is not a fault; solvers report it through their result status.
enum class FaultKind {
  kInvalidArgument,
  kInvalidInstance,
  kForeignEdge,
  kNoWeights,
  kStuck,           // greedy_dag ran out of eligible reviewers.
  kSwapExhausted,   // greedy_swap found no repair triple.
  kOracleTooLarge,
  kFormat,
  kIo,
};

const char* FaultKindName(FaultKind kind);

class ReviewError : public std::runtime_error {
 public:
  ReviewError(FaultKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  FaultKind kind() const { return kind_; }

  // Paper index the heuristics got stuck on, when applicable.
  std::optional<int> paper() const { return paper_; }
  // Loop iteration at which the fault was raised, when applicable.
  std::optional<long long> iteration() const { return iteration_; }

  ReviewError& WithPaper(int paper) {
    paper_ = paper;
    return *this;
  }
  ReviewError& WithIteration(long long iteration) {
    iteration_ = iteration;
    return *this;
  }

 private:
  FaultKind kind_;
  std::optional<int> paper_;
  std::optional<long long> iteration_;
};

}  // namespace cfreview

#endif  // CFREVIEW_ERRORS_H_
