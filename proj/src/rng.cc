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

#include "cfreview/rng.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "cfreview/errors.h"

namespace cfreview {

uint64_t SplitMix64::UniformBelow(uint64_t n) {
  if (n == 0) throw ReviewError(FaultKind::kInvalidArgument, "UniformBelow(0)");
  constexpr uint64_t kMax = std::numeric_limits<uint64_t>::max();
  // 2^64 mod n; draws above kMax - rem fall in the incomplete last block.
  const uint64_t rem = (kMax % n + 1) % n;
  while (true) {
    const uint64_t x = Next();
    if (rem == 0 || x <= kMax - rem) return x % n;
  }
}

int64_t SplitMix64::UniformInt(int64_t lo, int64_t hi) {
  if (hi < lo) throw ReviewError(FaultKind::kInvalidArgument, "UniformInt: empty range");
  const uint64_t span = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo);
  if (span == std::numeric_limits<uint64_t>::max()) return static_cast<int64_t>(Next());
  return lo + static_cast<int64_t>(UniformBelow(span + 1));
}

std::vector<int> SampleWithoutReplacement(SplitMix64& rng, int n, int k) {
  if (k < 0 || k > n) {
    throw ReviewError(FaultKind::kInvalidArgument, "cannot sample " + std::to_string(k) +
                                                       " of " + std::to_string(n));
  }
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng.UniformBelow(static_cast<uint64_t>(n - i)));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

uint64_t MixSeed(std::initializer_list<uint64_t> parts) {
  uint64_t h = 0x6a09e667f3bcc909ULL;
  for (uint64_t part : parts) h = SplitMix64(h ^ part).Next();
  return h;
}

}  // namespace cfreview
