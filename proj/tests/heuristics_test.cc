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

#include <algorithm>
#include <cmath>
#include <random>

#include "cfreview/cycles.h"
#include "cfreview/errors.h"
#include "cfreview/generators.h"
#include "cfreview/guarantees.h"
#include "cfreview/heuristics.h"
#include "cfreview/io.h"
#include "oracles.h"

namespace cfreview {
namespace {

ReviewInstance FromJson(const std::string& text) {
  return ReviewInstance::FromData(ParseInstanceJson(text));
}

const char* kMutual = R"({"agents": ["a1", "a2"], "papers": ["p1", "p2"],
  "authorship": [["p1", "a1"], ["p2", "a2"]],
  "qualification": [["a1", "p2"], ["a2", "p1"]]})";

bool Satisfied(const GuaranteeVerdict& v, const std::string& name) {
  const auto* c = v.Find(name);
  EXPECT_NE(c, nullptr) << name;
  return c && c->satisfied;
}

// n_A agents, agent i < n_P authors paper i; every paper gets `extra`
// qualified reviewers beyond n_P + d, drawn at random.
ReviewInstance Prop3Instance(std::mt19937_64& rng, int n_papers, int n_agents, int per_paper) {
  InstanceBuilder b;
  for (int a = 0; a < n_agents; ++a) b.AddAgent("a" + std::to_string(a));
  for (int p = 0; p < n_papers; ++p) {
    b.AddPaper("p" + std::to_string(p));
    b.AddAuthor(p, p);
  }
  std::vector<std::vector<int>> qualified(n_agents);
  for (int p = 0; p < n_papers; ++p) {
    std::vector<int> pool;
    for (int a = 0; a < n_agents; ++a) {
      if (a != p) pool.push_back(a);
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    for (int i = 0; i < per_paper; ++i) qualified[pool[i]].push_back(p);
  }
  for (int a = 0; a < n_agents; ++a) {
    std::sort(qualified[a].begin(), qualified[a].end());
    for (int p : qualified[a]) b.AddQualification(a, p);
  }
  return b.Build();
}

TEST(GreedyDag, OnlyPossibleReviewSet) {
  const auto inst = FromJson(R"({"agents": ["a1", "a2", "a3", "a4"], "papers": ["p1"],
    "authorship": [["p1", "a1"]],
    "qualification": [["a2", "p1"], ["a3", "p1"], ["a4", "p1"]]})");
  const Assignment x = GreedyDag(inst, 3);
  EXPECT_EQ(x, Assignment({{1, 0}, {2, 0}, {3, 0}}));
  EXPECT_FALSE(FindReviewCycles(inst, x, CycleBound::Unbounded()).has_cycle);
}

TEST(GreedyDag, Prop3InstancesAreAcyclicAndValid) {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 100; ++round) {
    const int n_p = 3 + static_cast<int>(rng() % 10);
    const int d = 1 + static_cast<int>(rng() % 3);
    const int n_a = n_p + d + 3 + static_cast<int>(rng() % 6);
    const auto inst = Prop3Instance(rng, n_p, n_a, n_p + d + static_cast<int>(rng() % 3));
    ASSERT_TRUE(CheckProp3(inst, d, d).holds);
    GreedyDagStats st;
    const Assignment x = GreedyDag(inst, d, &st);
    EXPECT_TRUE(IsValidAssignment(inst, x, {.c_reviewer = d, .d_paper = d}));
    EXPECT_FALSE(FindReviewCycles(inst, x, CycleBound::Unbounded()).has_cycle);
    EXPECT_TRUE(testing::BruteCycles(inst, x, 3).empty());
    EXPECT_TRUE(st.conservation_held);
  }
}

TEST(GreedyDag, MayGetStuckButNeverReturnsInvalid) {
  // Two single-author papers, one paperless agent, d = 1; each paper can be
  // reviewed by the free agent or the other paper's author.
  const auto inst = FromJson(R"({"agents": ["a1", "a2", "f"], "papers": ["p1", "p2"],
    "authorship": [["p1", "a1"], ["p2", "a2"]],
    "qualification": [["a1", "p2"], ["a2", "p1"], ["f", "p1"], ["f", "p2"]]})");
  EXPECT_FALSE(CheckProp3(inst, 1).holds);
  try {
    const Assignment x = GreedyDag(inst, 1);
    EXPECT_TRUE(IsValidAssignment(inst, x, {.c_reviewer = 1, .d_paper = 1}));
    EXPECT_FALSE(FindReviewCycles(inst, x, CycleBound::Unbounded()).has_cycle);
  } catch (const ReviewError& e) {
    EXPECT_EQ(e.kind(), FaultKind::kStuck);
    EXPECT_TRUE(e.paper().has_value());
    EXPECT_TRUE(e.iteration().has_value());
  }
}

// Every instance with up to 4 agents and 3 papers: each (agent, paper) pair
// is an authorship, a qualification, or neither.
TEST(GreedyDag, ExhaustiveSmallInstances) {
  int64_t runs = 0, faults = 0;
  for (int n_a = 1; n_a <= 4; ++n_a) {
    for (int n_p = 1; n_p <= 3; ++n_p) {
      const int cells = n_a * n_p;
      int total = 1;
      for (int i = 0; i < cells; ++i) total *= 3;
      for (int code = 0; code < total; ++code) {
        InstanceBuilder b;
        for (int a = 0; a < n_a; ++a) b.AddAgent("a" + std::to_string(a));
        for (int p = 0; p < n_p; ++p) b.AddPaper("p" + std::to_string(p));
        int c = code;
        for (int a = 0; a < n_a; ++a) {
          for (int p = 0; p < n_p; ++p, c /= 3) {
            if (c % 3 == 1) b.AddAuthor(p, a);
            if (c % 3 == 2) b.AddQualification(a, p);
          }
        }
        const auto inst = b.Build();
        for (int d = 1; d <= 2; ++d) {
          ++runs;
          try {
            const Assignment x = GreedyDag(inst, d);
            ASSERT_TRUE(IsValidAssignment(inst, x, {.c_reviewer = d, .d_paper = d}))
                << InstanceToJson(inst.ToData());
            ASSERT_FALSE(FindReviewCycles(inst, x, CycleBound::Unbounded()).has_cycle)
                << InstanceToJson(inst.ToData());
          } catch (const ReviewError& e) {
            ASSERT_EQ(e.kind(), FaultKind::kStuck);
            ++faults;
          }
        }
      }
    }
  }
  EXPECT_GT(runs, 1000000);
  EXPECT_GT(faults, 0);
}

TEST(GreedyDag, OperationsGrowLinearly) {
  std::mt19937_64 rng(4);
  std::vector<double> ratio;
  for (int n : {1000, 10000}) {
    const int n_p = static_cast<int>(std::sqrt(n));
    const auto inst = Prop3Instance(rng, n_p, n, n_p + 5);
    GreedyDagStats st;
    GreedyDag(inst, 3, &st);
    const double size =
        inst.num_agents() + inst.num_papers() + inst.num_qualification_edges();
    ratio.push_back(static_cast<double>(st.operations) / size);
  }
  EXPECT_LE(std::max(ratio[0], ratio[1]) / std::min(ratio[0], ratio[1]), 3.0);
}

TEST(GreedyDag, Deterministic) {
  std::mt19937_64 rng(2);
  const auto inst = Prop3Instance(rng, 20, 40, 26);
  EXPECT_EQ(GreedyDag(inst, 3), GreedyDag(inst, 3));
}

TEST(GreedySwap, MutualPairIsExhausted) {
  const auto inst = FromJson(kMutual);
  try {
    GreedySwap(inst, {.c_reviewer = 1, .d_paper = 1, .z = CycleBound::AtMost(2)});
    FAIL() << "expected a fault";
  } catch (const ReviewError& e) {
    EXPECT_EQ(e.kind(), FaultKind::kSwapExhausted);
    ASSERT_TRUE(e.paper().has_value());
  }
}

TEST(GreedySwap, Preconditions) {
  const auto inst = FromJson(kMutual);
  EXPECT_THROW(GreedySwap(inst, {.c_reviewer = 1, .d_paper = 1, .z = CycleBound::Unbounded()}),
               ReviewError);
  try {
    GreedySwap(inst, {.c_reviewer = 1, .d_paper = 1, .z = CycleBound::AtMost(1),
                      .weighted = true});
    FAIL() << "expected a fault";
  } catch (const ReviewError& e) {
    EXPECT_EQ(e.kind(), FaultKind::kNoWeights);
  }
}

TEST(GreedySwap, Prop4RegimeSucceeds) {
  int checked = 0;
  for (uint64_t seed = 0; checked < 200; ++seed) {
    ASSERT_LT(seed, 5000u) << "generator rarely meets the regime";
    std::mt19937_64 rng(seed);
    RandomControls k;
    k.n_papers = 6 + static_cast<int>(rng() % 10);
    k.n_agents = k.n_papers + static_cast<int>(rng() % 4);
    k.min_authors_per_paper = k.max_authors_per_paper = 1;
    k.max_papers_per_author = 1;
    k.conflicts_per_agent = static_cast<int>(rng() % 3);
    const auto inst = GenRandom(k, seed);
    const int z = 1 + static_cast<int>(seed % 3);
    const SolveParams params{.c_reviewer = 1, .d_paper = 1, .z = CycleBound::AtMost(z)};
    if (!CheckProp4(inst, params).holds) continue;
    ++checked;
    const Assignment x = GreedySwap(inst, params);
    EXPECT_TRUE(IsValidAssignment(inst, x, params));
    EXPECT_FALSE(FindReviewCycles(inst, x, params.z).has_cycle);
  }
}

TEST(GreedySwap, IterationsBoundedByRequiredReviews) {
  std::mt19937_64 rng(12);
  for (int round = 0; round < 50; ++round) {
    RandomControls k;
    k.n_papers = 8;
    k.n_agents = 12;
    k.max_authors_per_paper = 2;
    k.max_papers_per_author = 2;
    const auto inst = GenRandom(k, rng());
    const SolveParams params{.c_reviewer = 3, .d_paper = 2, .z = CycleBound::AtMost(2)};
    GreedySwapStats st;
    try {
      const Assignment x = GreedySwap(inst, params, &st);
      EXPECT_EQ(st.iterations, 16);
      EXPECT_EQ(st.additions + st.swaps, st.iterations);
      EXPECT_TRUE(IsValidAssignment(inst, x, params));
      EXPECT_FALSE(FindReviewCycles(inst, x, params.z).has_cycle);
    } catch (const ReviewError& e) {
      EXPECT_EQ(e.kind(), FaultKind::kSwapExhausted);
      EXPECT_LE(st.iterations, 16);
    }
  }
}

// With no authorship there are no cycles, so Case 1 picks by weight alone.
TEST(GreedySwap, WeightedNotWorseWithoutCycles) {
  int compared = 0;
  for (uint64_t seed = 0; compared < 100; ++seed) {
    ASSERT_LT(seed, 1000u);
    RandomControls k;
    k.n_papers = 5 + static_cast<int>(seed % 15);
    k.n_agents = k.n_papers;
    k.min_authors_per_paper = k.max_authors_per_paper = 0;
    k.conflicts_per_agent = static_cast<int>(seed % 4);
    k.weighted = true;
    const auto inst = GenRandom(k, seed);
    SolveParams params{.c_reviewer = 6, .d_paper = 3, .z = CycleBound::AtMost(2)};
    Assignment weighted_x, plain_x;
    try {
      params.weighted = true;
      weighted_x = GreedySwap(inst, params);
      params.weighted = false;
      plain_x = GreedySwap(inst, params);
    } catch (const ReviewError&) {
      continue;
    }
    ++compared;
    EXPECT_GE(AssignmentWeight(inst, weighted_x), AssignmentWeight(inst, plain_x))
        << "seed " << seed;
  }
}

// Greedy by weight is not a maximum-weight matching, so the pairing above
// does not hold in general: here scan order wins 14 to 10.
TEST(GreedySwap, WeightedCanLoseToScanOrder) {
  InstanceBuilder b;
  b.AddAgent("a0");
  b.AddAgent("a1");
  b.AddPaper("p0");
  b.AddPaper("p1");
  b.AddQualification(0, 0, 5);
  b.AddQualification(0, 1, 10);
  b.AddQualification(1, 0, 0);
  b.AddQualification(1, 1, 9);
  const auto inst = b.Build();
  SolveParams params{.c_reviewer = 1, .d_paper = 1, .z = CycleBound::AtMost(2),
                     .weighted = true};
  EXPECT_EQ(AssignmentWeight(inst, GreedySwap(inst, params)), 10);
  params.weighted = false;
  EXPECT_EQ(AssignmentWeight(inst, GreedySwap(inst, params)), 14);
}

TEST(GreedySwap, CompletesStartAssignment) {
  RandomControls k;
  k.n_papers = 10;
  k.n_agents = 14;
  const auto inst = GenRandom(k, 9);
  const SolveParams params{.c_reviewer = 3, .d_paper = 2, .z = CycleBound::AtMost(2)};
  const Assignment start({inst.qualification_edges()[0]});
  const Assignment x = GreedySwapFrom(inst, params, start);
  EXPECT_TRUE(IsValidAssignment(inst, x, params));
  EXPECT_THROW(GreedySwapFrom(inst, {.c_reviewer = 0, .d_paper = 2, .z = CycleBound::AtMost(2)},
                              start),
               ReviewError);
}

// Thm4 guarantee, for each z in {1, 2, 3}.
class Thm4Guarantee : public ::testing::TestWithParam<int> {};

TEST_P(Thm4Guarantee, SwapNeverFaults) {
  const int z = GetParam();
  int checked = 0;
  for (uint64_t seed = 0; checked < 500; ++seed) {
    ASSERT_LT(seed, 5000u) << "generator rarely meets the guarantee";
    RandomControls k;
    const bool wide = z == 1 && seed % 2 == 1;  // multi-author instances
    if (z == 3) {
      k.n_papers = 62 + static_cast<int>(seed % 6);
      k.n_agents = 500 + static_cast<int>(seed % 40);
    } else if (z == 2) {
      k.n_papers = 30 + static_cast<int>(seed % 10);
      k.n_agents = 90 + static_cast<int>(seed % 20);
    } else {
      k.n_papers = 24 + static_cast<int>(seed % 10);
      k.n_agents = 40 + static_cast<int>(seed % 12);
    }
    k.max_authors_per_paper = wide ? 2 : 1;
    k.max_papers_per_author = wide ? 2 : 1;
    k.conflicts_per_agent = static_cast<int>(seed % (z == 3 ? 2 : 3));
    k.weighted = seed % 3 == 0;
    const auto inst = GenRandom(k, seed);
    const SolveParams params{.c_reviewer = 6, .d_paper = 3, .z = CycleBound::AtMost(z),
                             .weighted = k.weighted};
    if (!CheckThm4(inst, params).holds) continue;
    ++checked;
    Assignment x;
    ASSERT_NO_THROW(x = GreedySwap(inst, params)) << "seed " << seed;
    ASSERT_TRUE(IsValidAssignment(inst, x, params));
    ASSERT_FALSE(FindReviewCycles(inst, x, params.z).has_cycle);
  }
}

INSTANTIATE_TEST_SUITE_P(Z, Thm4Guarantee, ::testing::Values(1, 2, 3));

TEST(CheckProp3, Holds) {
  // 3 single-author papers, 10 agents, each qualified for all but its own.
  InstanceBuilder b;
  for (int a = 0; a < 10; ++a) b.AddAgent("a" + std::to_string(a));
  for (int p = 0; p < 3; ++p) {
    b.AddPaper("p" + std::to_string(p));
    b.AddAuthor(p, p);
  }
  for (int a = 0; a < 10; ++a) {
    for (int p = 0; p < 3; ++p) {
      if (a != p) b.AddQualification(a, p);
    }
  }
  const auto v = CheckProp3(b.Build(), 1);
  EXPECT_TRUE(v.holds);
  const auto* c = v.Find("delta_P^- >= n_P + d");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->left, "9");
  EXPECT_EQ(c->right, "4");
}

TEST(CheckProp3, BoundaryFailsOnlyThatCondition) {
  std::mt19937_64 rng(1);
  const int n_p = 5, d = 2;
  const auto inst = Prop3Instance(rng, n_p, 12, n_p + d - 1);
  const auto v = CheckProp3(inst, d, 3);
  EXPECT_FALSE(v.holds);
  for (const auto& c : v.conditions) {
    EXPECT_EQ(c.satisfied, c.name != "delta_P^- >= n_P + d") << c.name;
  }
}

TEST(CheckProp3, MultiAuthorFails) {
  const auto inst = FromJson(R"({"agents": ["a1", "a2", "a3"], "papers": ["p1"],
    "authorship": [["p1", "a1"], ["p1", "a2"]], "qualification": [["a3", "p1"]]})");
  const auto v = CheckProp3(inst, 1);
  EXPECT_FALSE(v.holds);
  EXPECT_FALSE(Satisfied(v, "Delta_P^+ = 1"));
}

// n agents and papers; agent i authors paper i and may review papers
// i+1..i+k (mod n).
ReviewInstance Circulant(int n, int k) {
  InstanceBuilder b;
  for (int i = 0; i < n; ++i) b.AddAgent("a" + std::to_string(i));
  for (int i = 0; i < n; ++i) {
    b.AddPaper("p" + std::to_string(i));
    b.AddAuthor(i, i);
  }
  for (int a = 0; a < n; ++a) {
    std::vector<int> ps;
    for (int j = 1; j <= k; ++j) ps.push_back((a + j) % n);
    std::sort(ps.begin(), ps.end());
    for (int p : ps) b.AddQualification(a, p);
  }
  return b.Build();
}

TEST(CheckProp4, Examples) {
  const SolveParams z2{.c_reviewer = 1, .d_paper = 1, .z = CycleBound::AtMost(2)};
  const auto holds = CheckProp4(Circulant(8, 6), z2);
  EXPECT_TRUE(holds.holds);
  const auto* c = holds.Find("n_P <= delta_A^+ + delta_P^- - 2z");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->left, "8");
  EXPECT_EQ(c->right, "8");
  EXPECT_FALSE(CheckProp4(Circulant(9, 6), z2).holds);
  const SolveParams z6{.c_reviewer = 1, .d_paper = 1, .z = CycleBound::AtMost(6)};
  EXPECT_FALSE(Satisfied(CheckProp4(Circulant(8, 6), z6), "delta_A^+ > z"));
}

TEST(CheckThm4, RatioConditionFails) {
  const auto v = CheckThm4Stats({.n_agents = 10,
                                 .n_papers = 30,
                                 .max_papers_per_author = 1,
                                 .max_authors_per_paper = 1,
                                 .min_qualified_papers = 1000,
                                 .min_qualified_reviewers = 1000,
                                 .c_reviewer = 6,
                                 .d_paper = 3,
                                 .z = 1});
  EXPECT_FALSE(v.holds);
  EXPECT_FALSE(Satisfied(v, "n_A*c >= n_P*d"));
}

TEST(CheckThm4, ExactRationalBoundary) {
  // c/d = 6/4: the right side is 3/2 * something; probe both sides.
  Thm4Inputs in{.n_agents = 1000,
                .n_papers = 0,
                .max_papers_per_author = 1,
                .max_authors_per_paper = 1,
                .min_qualified_papers = 40,
                .min_qualified_reviewers = 100,
                .c_reviewer = 6,
                .d_paper = 4,
                .z = 1};
  // Right side: 40 - 8 - 6 + 1.5 * (100 - 12 - 4) = 26 + 126 = 152.
  in.n_papers = 152;
  EXPECT_TRUE(CheckThm4Stats(in).holds);
  in.n_papers = 153;
  EXPECT_FALSE(CheckThm4Stats(in).holds);
  in.min_qualified_reviewers = 101;  // right side 153.5
  const auto v = CheckThm4Stats(in);
  EXPECT_TRUE(v.holds);
  const auto* c = v.Find(
      "n_P <= delta_A^+ - 2(Delta_A^-*d)^z - c + (c/d)(delta_P^- - 2(Delta_P^+*c)^z - d)");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->right, "307/2");
}

TEST(CheckThm4, AgreesWithCor1OnSymmetricInputs) {
  std::mt19937_64 rng(99);
  int holds = 0;
  for (int i = 0; i < 1000; ++i) {
    const int z = 1 + static_cast<int>(rng() % 3);
    const int delta = 1 + static_cast<int>(rng() % 3);
    const long long n = 10 + static_cast<long long>(rng() % 20000);
    const long long coi = static_cast<long long>(rng() % (n / 2));
    const auto thm4 = CheckThm4Stats({.n_agents = n,
                                      .n_papers = n,
                                      .max_papers_per_author = delta,
                                      .max_authors_per_paper = delta,
                                      .min_qualified_papers = n - coi,
                                      .min_qualified_reviewers = n - coi,
                                      .c_reviewer = 6,
                                      .d_paper = 3,
                                      .z = z});
    const auto cor1 = CheckCor1(n, coi, delta, z);
    ASSERT_EQ(thm4.holds, cor1.holds) << n << " " << coi << " " << delta << " " << z;
    holds += cor1.holds;
  }
  EXPECT_GT(holds, 50);
  EXPECT_LT(holds, 950);
}

TEST(CheckCor1, WorkedExample) {
  const auto v = CheckCor1(9251, 700, 10, 2);
  EXPECT_TRUE(v.holds);
  ASSERT_EQ(v.conditions.size(), 1u);
  EXPECT_EQ(v.conditions[0].left, "9245");
  EXPECT_EQ(v.conditions[0].right, "9150");
}

TEST(CheckCor1, Boundary) {
  EXPECT_TRUE(CheckCor1(9156, 700, 10, 2).holds);
  EXPECT_FALSE(CheckCor1(9155, 700, 10, 2).holds);
  EXPECT_TRUE(CheckCor1(21, 0, 1, 1).holds);
  EXPECT_FALSE(CheckCor1(20, 0, 1, 1).holds);
  EXPECT_EQ(CheckCor1(9251, 701, 10, 2).conditions[0].right, "18303/2");
  EXPECT_THROW(CheckCor1(10, -1, 1, 1), ReviewError);
  // Saturates instead of overflowing.
  EXPECT_FALSE(CheckCor1(1000, 0, 1000000, 9).holds);
}

TEST(Verdict, Json) {
  const std::string json = VerdictToJson(CheckCor1(9251, 700, 10, 2));
  EXPECT_NE(json.find("\"holds\": true"), std::string::npos);
  EXPECT_NE(json.find("\"left\": \"9245\""), std::string::npos);
}

}  // namespace
}  // namespace cfreview
