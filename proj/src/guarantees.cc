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

#include "cfreview/guarantees.h"

#include <algorithm>

#include "cfreview/errors.h"
#include "json.hpp"

namespace cfreview {
namespace {

using Int = __int128;

// Powers saturate here. Every other quantity in the conditions is a degree or
// a count (< 2^63) times a small factor, so a saturated power still decides
// each comparison correctly and products stay far from overflow.
constexpr Int kSaturate = static_cast<Int>(1'000'000'000'000LL) * 1'000'000'000'000LL;

Int SatPow(Int base, int exp) {
  Int r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r >= kSaturate) return kSaturate;
  }
  return r;
}

Int SatMul(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  if (a >= kSaturate / b) return kSaturate;
  return a * b;
}

std::string IntString(Int v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  if (neg) v = -v;
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

Int Gcd(Int a, Int b) {
  if (a < 0) a = -a;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// num/den with den > 0, printed reduced.
std::string RationalString(Int num, Int den) {
  const Int g = Gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (den == 1) return IntString(num);
  return IntString(num) + "/" + IntString(den);
}

class Builder {
 public:
  void Add(std::string name, std::string left, std::string right, bool ok) {
    verdict_.conditions.push_back({std::move(name), std::move(left), std::move(right), ok});
  }
  // Condition involving a minimum that may be undefined.
  void AddUndefined(std::string name, std::string right) {
    Add(std::move(name), "undefined", std::move(right), false);
  }
  GuaranteeVerdict Done() {
    verdict_.holds = std::all_of(verdict_.conditions.begin(), verdict_.conditions.end(),
                                 [](const auto& c) { return c.satisfied; });
    return std::move(verdict_);
  }

 private:
  GuaranteeVerdict verdict_;
};

void AddEq(Builder& b, const std::string& name, std::optional<int> left, Int right) {
  if (!left) return b.AddUndefined(name, IntString(right));
  b.Add(name, IntString(*left), IntString(right), *left == right);
}

}  // namespace

const GuaranteeCondition* GuaranteeVerdict::Find(const std::string& name) const {
  for (const auto& c : conditions) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

GuaranteeVerdict CheckProp3(const ReviewInstance& instance, int d_paper,
                            std::optional<int> c_reviewer) {
  const DegreeStats s = ComputeDegreeStats(instance);
  Builder b;
  b.Add("Delta_A^- <= 1", IntString(s.max_papers_per_author), "1",
        s.max_papers_per_author <= 1);
  AddEq(b, "delta_P^+ = 1", s.min_authors_per_paper, 1);
  AddEq(b, "Delta_P^+ = 1",
        instance.num_papers() > 0 ? std::optional<int>(s.max_authors_per_paper)
                                  : std::nullopt,
        1);
  if (c_reviewer) {
    b.Add("d <= c", IntString(d_paper), IntString(*c_reviewer), d_paper <= *c_reviewer);
  }
  const Int need = static_cast<Int>(instance.num_papers()) + d_paper;
  if (s.min_qualified_reviewers) {
    b.Add("delta_P^- >= n_P + d", IntString(*s.min_qualified_reviewers), IntString(need),
          *s.min_qualified_reviewers >= need);
  } else {
    b.AddUndefined("delta_P^- >= n_P + d", IntString(need));
  }
  return b.Done();
}

GuaranteeVerdict CheckProp4(const ReviewInstance& instance, const SolveParams& params) {
  if (!params.z.bounded()) {
    throw ReviewError(FaultKind::kInvalidArgument, "check_prop4 needs a finite z");
  }
  const DegreeStats s = ComputeDegreeStats(instance);
  const Int z = params.z.z();
  Builder b;
  b.Add("Delta_A^- <= 1", IntString(s.max_papers_per_author), "1",
        s.max_papers_per_author <= 1);
  AddEq(b, "delta_P^+ = 1", s.min_authors_per_paper, 1);
  AddEq(b, "Delta_P^+ = 1",
        instance.num_papers() > 0 ? std::optional<int>(s.max_authors_per_paper)
                                  : std::nullopt,
        1);
  AddEq(b, "c = 1", params.c_reviewer, 1);
  AddEq(b, "d = 1", params.d_paper, 1);
  b.Add("n_A >= n_P", IntString(instance.num_agents()), IntString(instance.num_papers()),
        instance.num_agents() >= instance.num_papers());
  const auto& da = s.min_qualified_papers;
  const auto& dp = s.min_qualified_reviewers;
  if (da) {
    b.Add("delta_A^+ > z", IntString(*da), IntString(z), *da > z);
  } else {
    b.AddUndefined("delta_A^+ > z", IntString(z));
  }
  if (dp) {
    b.Add("delta_P^- > z", IntString(*dp), IntString(z), *dp > z);
  } else {
    b.AddUndefined("delta_P^- > z", IntString(z));
  }
  const std::string name = "n_P <= delta_A^+ + delta_P^- - 2z";
  if (da && dp) {
    const Int right = static_cast<Int>(*da) + *dp - 2 * z;
    b.Add(name, IntString(instance.num_papers()), IntString(right),
          instance.num_papers() <= right);
  } else {
    b.Add(name, IntString(instance.num_papers()), "undefined", false);
  }
  return b.Done();
}

GuaranteeVerdict CheckThm4Stats(const Thm4Inputs& in) {
  const Int c = in.c_reviewer, d = in.d_paper;
  const Int x = SatPow(static_cast<Int>(in.max_papers_per_author) * d, in.z);
  const Int y = SatPow(static_cast<Int>(in.max_authors_per_paper) * c, in.z);
  const Int da = in.min_qualified_papers, dp = in.min_qualified_reviewers;
  Builder b;
  b.Add("d > 0", IntString(d), "0", d > 0);
  b.Add("n_A*c >= n_P*d", IntString(in.n_agents * c), IntString(in.n_papers * d),
        in.n_agents * c >= in.n_papers * d);
  b.Add("delta_A^+ > 2(Delta_A^-*d)^z + c", IntString(da), IntString(2 * x + c),
        da > 2 * x + c);
  b.Add("delta_P^- > 2(Delta_P^+*c)^z + d", IntString(dp), IntString(2 * y + d),
        dp > 2 * y + d);
  const std::string name =
      "n_P <= delta_A^+ - 2(Delta_A^-*d)^z - c + (c/d)(delta_P^- - 2(Delta_P^+*c)^z - d)";
  if (d > 0) {
    // Scaled by d: n_P*d <= d(da - 2x - c) + c(dp - 2y - d).
    const Int scaled = d * (da - 2 * x - c) + c * (dp - 2 * y - d);
    b.Add(name, IntString(in.n_papers), RationalString(scaled, d),
          static_cast<Int>(in.n_papers) * d <= scaled);
  } else {
    b.Add(name, IntString(in.n_papers), "undefined", false);
  }
  return b.Done();
}

GuaranteeVerdict CheckThm4(const ReviewInstance& instance, const SolveParams& params) {
  if (!params.z.bounded()) {
    throw ReviewError(FaultKind::kInvalidArgument, "check_thm4 needs a finite z");
  }
  const DegreeStats s = ComputeDegreeStats(instance);
  if (!s.min_qualified_papers || !s.min_qualified_reviewers) {
    Builder b;
    b.AddUndefined("delta_A^+ and delta_P^- defined", "n_A > 0 and n_P > 0");
    return b.Done();
  }
  return CheckThm4Stats({.n_agents = instance.num_agents(),
                         .n_papers = instance.num_papers(),
                         .max_papers_per_author = s.max_papers_per_author,
                         .max_authors_per_paper = s.max_authors_per_paper,
                         .min_qualified_papers = *s.min_qualified_papers,
                         .min_qualified_reviewers = *s.min_qualified_reviewers,
                         .c_reviewer = params.c_reviewer,
                         .d_paper = params.d_paper,
                         .z = params.z.z()});
}

GuaranteeVerdict CheckCor1(long long n_papers, long long coi, long long delta, int z) {
  if (z < 0 || coi < 0 || delta < 0) {
    throw ReviewError(FaultKind::kInvalidArgument,
                      "check_cor1 needs non-negative coi, Delta and z");
  }
  const Int left = static_cast<Int>(n_papers) - 6;
  // 1.5*coi + delta^z (2*6^z + 3^z), doubled to stay integral.
  const Int tail = SatMul(SatPow(delta, z), 2 * SatPow(6, z) + SatPow(3, z));
  const Int right2 = 3 * static_cast<Int>(coi) + 2 * tail;
  Builder b;
  b.Add("n - 6 >= 1.5*coi + Delta^z(2*6^z + 3^z)", IntString(left),
        RationalString(right2, 2), 2 * left >= right2);
  return b.Done();
}

std::string VerdictToJson(const GuaranteeVerdict& verdict) {
  using nlohmann::json;
  json conditions = json::array();
  for (const auto& c : verdict.conditions) {
    conditions.push_back(
        {{"name", c.name}, {"left", c.left}, {"right", c.right}, {"satisfied", c.satisfied}});
  }
  return json{{"holds", verdict.holds}, {"conditions", conditions}}.dump(2) + "\n";
}

}  // namespace cfreview
