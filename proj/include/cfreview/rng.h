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

// The one random source used by every generator, fully specified so that
// samples can be reproduced bit for bit elsewhere:
//
//   state += 0x9e3779b97f4a7c15
//   x = state
//   x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9
//   x = (x ^ (x >> 27)) * 0x94d049bb133111eb
//   return x ^ (x >> 31)
//
// UniformBelow(n) rejects draws >= floor(2^64 / n) * n and returns x % n.
// UniformDouble() is (x >> 11) * 2^-53.

#ifndef CFREVIEW_RNG_H_
#define CFREVIEW_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace cfreview {

class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t Next() {
    uint64_t x = (state_ += 0x9e3779b97f4a7c15ULL);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  // Uniform in [0, n); n must be positive.
  uint64_t UniformBelow(uint64_t n);
  // Uniform in [lo, hi].
  int64_t UniformInt(int64_t lo, int64_t hi);
  // Uniform in [0, 1).
  double UniformDouble() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

// k distinct indices from [0, n), by a partial Fisher-Yates shuffle, returned
// in increasing order.
std::vector<int> SampleWithoutReplacement(SplitMix64& rng, int n, int k);

// Order-sensitive seed mixing: folds each part through one SplitMix64 step.
uint64_t MixSeed(std::initializer_list<uint64_t> parts);

}  // namespace cfreview

#endif  // CFREVIEW_RNG_H_
