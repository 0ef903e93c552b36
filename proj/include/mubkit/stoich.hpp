// Copyright 2026 The mubkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mubkit/compat_group.hpp"
#include "mubkit/parallel.hpp"

namespace mubkit {

using BigInt = boost::multiprecision::cpp_int;

/// Exact solution counts of the unrestricted four-qupit systems, as computed
/// by enumerate_solutions.
inline constexpr std::uint64_t kFourQutritSolutionCount = 6005;
inline constexpr std::uint64_t kFourQuquintSolutionCount = 198379;

/// Closed-form n-body profiles of the named types for N <= 4, plus the profile
/// of the full nonidentity operator set.
struct ProfileTable {
  SystemParams params;
  /// Row order; decreasing 1-body coefficient.
  std::vector<MubLabel> labels;
  std::map<MubLabel, NBodyProfile> rows;
  NBodyProfile totals;
};

/// Labels admitted for N qupits. P4 is dropped for p = 2, which has no such type.
inline std::vector<MubLabel> admitted_labels(const SystemParams& params, bool include_p4 = true) {
  using L = MubLabel;
  switch (params.n_qupits) {
    case 1: return {L::PI};
    case 2: return {L::PI, L::B};
    case 3: return {L::PI, L::SB, L::G3};
    case 4: {
      std::vector<L> out = {L::PI, L::S2B, L::SG3, L::BB, L::G4, L::C4};
      if (include_p4 && params.p >= 3) out.push_back(L::P4);
      return out;
    }
    default: throw InvalidParams("named types exist only for N <= 4");
  }
}

inline NBodyProfile closed_form_profile(MubLabel label, std::uint64_t p, std::uint32_t n) {
  using L = MubLabel;
  const std::uint64_t q = p - 1, s = p * p - 1;
  auto prof = [](std::vector<std::uint64_t> v) { return NBodyProfile{std::move(v)}; };
  const std::uint64_t p2 = p * p, p4 = p2 * p2;
  switch (label) {
    case L::PI: {
      // C(N,k) (p-1)^k
      std::vector<std::uint64_t> v(n);
      std::uint64_t binom = 1;
      for (std::uint32_t k = 1; k <= n; ++k) {
        binom = binom * (n - k + 1) / k;
        v[k - 1] = binom * checked_pow(q, k);
      }
      return NBodyProfile{v};
    }
    case L::B: return prof({0, s});
    case L::SB: return prof({q, s, q * s});
    case L::G3: return prof({0, 3 * q, q * q * (p + 2)});
    case L::S2B: return prof({2 * q, 2 * p * q, 2 * q * s, q * q * q * (p + 1)});
    case L::SG3: return prof({q, 3 * q, q * q * (p + 5), q * q * q * (p + 2)});
    case L::BB: return prof({0, 2 * s, 0, s * s});
    case L::G4: return prof({0, 6 * q, 4 * q * (p - 2), p4 - 4 * p2 + 6 * p - 3});
    case L::C4: return prof({0, 2 * q, 4 * p * q, p4 - 4 * p2 + 2 * p + 1});
    case L::P4: return prof({0, 0, 4 * s, p4 - 4 * p2 + 3});
    default: throw InvalidParams("no closed-form profile for " + to_string(label));
  }
}

/// C(N,n) (p^2-1)^n.
inline NBodyProfile operator_totals(const SystemParams& params) {
  const std::uint32_t n = params.n_qupits;
  std::vector<std::uint64_t> v(n);
  std::uint64_t binom = 1;
  for (std::uint32_t k = 1; k <= n; ++k) {
    binom = binom * (n - k + 1) / k;
    v[k - 1] = binom * checked_pow(std::uint64_t{params.p} * params.p - 1, k);
  }
  return NBodyProfile{v};
}

inline ProfileTable profile_table(const SystemParams& params, bool include_p4 = true) {
  ProfileTable t;
  t.params = params;
  t.labels = admitted_labels(params, include_p4);
  for (MubLabel l : t.labels) t.rows[l] = closed_form_profile(l, params.p, params.n_qupits);
  t.totals = operator_totals(params);
  return t;
}

/// Column equations sum_t x_t profile_t[n] = totals[n], one per n, plus the
/// basis count sum_t x_t = p^N + 1. Each variable carries [lo, hi] bounds.
struct StoichSystem {
  SystemParams params;
  std::vector<MubLabel> labels;
  /// coeff[e][v]; the last row is the basis count.
  std::vector<std::vector<std::int64_t>> coeff;
  std::vector<std::int64_t> rhs;
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;

  std::size_t variables() const { return labels.size(); }
  std::size_t equations() const { return rhs.size(); }

  std::size_t index_of(MubLabel l) const {
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) throw InvalidParams(to_string(l) + " is not a variable of this system");
    return static_cast<std::size_t>(it - labels.begin());
  }

  StoichSystem& fix(MubLabel l, std::int64_t value) {
    const std::size_t v = index_of(l);
    lo[v] = hi[v] = value;
    return *this;
  }
};

inline StoichSystem make_system(const ProfileTable& table, const std::set<MubLabel>& forbid = {}) {
  StoichSystem s;
  s.params = table.params;
  for (MubLabel l : table.labels) {
    if (!forbid.contains(l)) s.labels.push_back(l);
  }
  const std::size_t n = table.params.n_qupits;
  s.coeff.assign(n + 1, std::vector<std::int64_t>(s.labels.size(), 0));
  for (std::size_t v = 0; v < s.labels.size(); ++v) {
    const NBodyProfile& row = table.rows.at(s.labels[v]);
    for (std::size_t e = 0; e < n; ++e) s.coeff[e][v] = static_cast<std::int64_t>(row.counts[e]);
    s.coeff[n][v] = 1;
  }
  for (std::size_t e = 0; e < n; ++e) s.rhs.push_back(static_cast<std::int64_t>(table.totals.counts[e]));
  s.rhs.push_back(static_cast<std::int64_t>(table.params.dim + 1));
  s.lo.assign(s.labels.size(), 0);
  s.hi.assign(s.labels.size(), s.rhs.back());
  return s;
}

inline StoichSystem make_system(const SystemParams& params, const std::set<MubLabel>& forbid = {}) {
  return make_system(profile_table(params, true), forbid);
}

/// One count per system variable, in the system's label order.
struct Solution {
  std::vector<MubLabel> labels;
  std::vector<std::int64_t> values;

  std::int64_t count(MubLabel l) const {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == l) return values[i];
    }
    return 0;
  }
  /// e.g. "PI:3,BB:2,C4:12"; zero entries kept.
  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (i) s += ',';
      s += mubkit::to_string(labels[i]) + ":" + std::to_string(values[i]);
    }
    return s;
  }
  friend bool operator==(const Solution&, const Solution&) = default;
};

inline bool satisfies(const StoichSystem& s, const std::vector<std::int64_t>& x) {
  if (x.size() != s.variables()) return false;
  for (std::size_t v = 0; v < x.size(); ++v) {
    if (x[v] < s.lo[v] || x[v] > s.hi[v]) return false;
  }
  for (std::size_t e = 0; e < s.equations(); ++e) {
    std::int64_t sum = 0;
    for (std::size_t v = 0; v < x.size(); ++v) sum += s.coeff[e][v] * x[v];
    if (sum != s.rhs[e]) return false;
  }
  return true;
}

namespace detail {

/// Depth-first scan in label order. A variable that is the last one with a
/// nonzero coefficient in some equation is solved from that equation; an
/// equation with no remaining variables must have an exhausted budget.
class StoichWalker {
 public:
  explicit StoichWalker(const StoichSystem& s) : s_(s) {
    const std::size_t nv = s.variables(), ne = s.equations();
    for (std::size_t v = 0; v < nv; ++v) {
      bool positive = false;
      for (std::size_t e = 0; e < ne; ++e) positive = positive || s.coeff[e][v] > 0;
      if (!positive) throw InvalidParams("variable " + to_string(s.labels[v]) + " has no positive coefficient");
    }
    last_.assign(ne, -1);
    for (std::size_t e = 0; e < ne; ++e) {
      for (std::size_t v = 0; v < nv; ++v) {
        if (s.coeff[e][v] != 0) last_[e] = static_cast<std::ptrdiff_t>(v);
      }
    }
    solver_.assign(nv, -1);
    closes_.assign(nv + 1, {});
    for (std::size_t e = 0; e < ne; ++e) {
      closes_[static_cast<std::size_t>(last_[e] + 1)].push_back(e);
      if (last_[e] >= 0 && solver_[static_cast<std::size_t>(last_[e])] < 0) {
        solver_[static_cast<std::size_t>(last_[e])] = static_cast<std::ptrdiff_t>(e);
      }
    }
  }

  /// Value range of the first variable before any pruning by later ones.
  std::pair<std::int64_t, std::int64_t> first_range() const {
    std::vector<std::int64_t> budget = s_.rhs;
    return range(0, budget);
  }

  /// Visits every solution whose first variable equals `first`, in
  /// lexicographic order.
  template <class Visit>
  void walk_from(std::int64_t first, Visit&& visit) const {
    std::vector<std::int64_t> budget = s_.rhs;
    std::vector<std::int64_t> x(s_.variables(), 0);
    if (!closed_ok(0, budget)) return;
    const auto [a, b] = range(0, budget);
    if (first < a || first > b) return;
    assign(0, first, budget, x);
    if (feasible_after(0, budget)) descend(1, budget, x, visit);
  }

 private:
  std::pair<std::int64_t, std::int64_t> range(std::size_t v, const std::vector<std::int64_t>& budget) const {
    std::int64_t a = s_.lo[v], b = s_.hi[v];
    for (std::size_t e = 0; e < s_.equations(); ++e) {
      if (s_.coeff[e][v] > 0) b = std::min(b, budget[e] / s_.coeff[e][v]);
    }
    if (solver_[v] >= 0) {
      const auto e = static_cast<std::size_t>(solver_[v]);
      const std::int64_t c = s_.coeff[e][v];
      if (budget[e] < 0 || budget[e] % c != 0) return {1, 0};
      const std::int64_t val = budget[e] / c;
      a = std::max(a, val);
      b = std::min(b, val);
    }
    return {a, b};
  }

  void assign(std::size_t v, std::int64_t val, std::vector<std::int64_t>& budget, std::vector<std::int64_t>& x) const {
    x[v] = val;
    for (std::size_t e = 0; e < s_.equations(); ++e) budget[e] -= s_.coeff[e][v] * val;
  }

  bool closed_ok(std::size_t level, const std::vector<std::int64_t>& budget) const {
    for (std::size_t e : closes_[level]) {
      if (budget[e] != 0) return false;
    }
    return true;
  }

  bool feasible_after(std::size_t v, const std::vector<std::int64_t>& budget) const {
    for (std::size_t e = 0; e < s_.equations(); ++e) {
      if (budget[e] < 0) return false;
    }
    return closed_ok(v + 1, budget);
  }

  template <class Visit>
  void descend(std::size_t v, std::vector<std::int64_t>& budget, std::vector<std::int64_t>& x, Visit& visit) const {
    if (v == s_.variables()) {
      visit(x);
      return;
    }
    const auto [a, b] = range(v, budget);
    for (std::int64_t val = a; val <= b; ++val) {
      assign(v, val, budget, x);
      if (feasible_after(v, budget)) descend(v + 1, budget, x, visit);
      assign(v, -val, budget, x);
    }
    x[v] = 0;
  }

  const StoichSystem& s_;
  std::vector<std::ptrdiff_t> last_;
  std::vector<std::ptrdiff_t> solver_;
  std::vector<std::vector<std::size_t>> closes_;
};

}  // namespace detail

/// Calls visit(values) for each nonnegative integer solution in lexicographic
/// order. Single-threaded.
template <class Visit>
void for_each_solution(const StoichSystem& s, Visit&& visit) {
  if (s.variables() == 0) return;
  const detail::StoichWalker w(s);
  const auto [a, b] = w.first_range();
  for (std::int64_t v = a; v <= b; ++v) w.walk_from(v, visit);
}

struct SolutionSet {
  BigInt count = 0;
  /// Empty unless collection was requested.
  std::vector<Solution> solutions;
};

/// Exact count and, optionally, every solution in lexicographic order. Values
/// of the first variable are split across workers.
inline SolutionSet enumerate_solutions(const StoichSystem& s, bool collect = true) {
  SolutionSet out;
  if (s.variables() == 0) return out;
  const detail::StoichWalker w(s);
  const auto [a, b] = w.first_range();
  if (a > b) return out;
  const std::size_t branches = static_cast<std::size_t>(b - a + 1);
  std::vector<BigInt> counts(branches, 0);
  std::vector<std::vector<Solution>> found(branches);
  parallel_for(branches, [&](std::size_t i) {
    std::uint64_t local = 0;
    w.walk_from(a + static_cast<std::int64_t>(i), [&](const std::vector<std::int64_t>& x) {
      ++local;
      if (collect) found[i].push_back(Solution{s.labels, x});
    });
    counts[i] = local;
  });
  for (std::size_t i = 0; i < branches; ++i) {
    out.count += counts[i];
    for (auto& sol : found[i]) out.solutions.push_back(std::move(sol));
  }
  return out;
}

enum class Direction { Minimize, Maximize };

struct Objective {
  MubLabel label;
  Direction direction;
};

/// Best solution under the objectives applied in order. Remaining ties go to
/// the lexicographically greatest solution in label order.
inline Solution extremize(const StoichSystem& s, const std::vector<Objective>& objectives) {
  std::vector<std::size_t> idx;
  for (const auto& o : objectives) idx.push_back(s.index_of(o.label));
  std::optional<std::vector<std::int64_t>> best;
  auto better = [&](const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
    for (std::size_t k = 0; k < objectives.size(); ++k) {
      const std::int64_t a = x[idx[k]], b = y[idx[k]];
      if (a != b) return objectives[k].direction == Direction::Minimize ? a < b : a > b;
    }
    return x > y;
  };
  for_each_solution(s, [&](const std::vector<std::int64_t>& x) {
    if (!best || better(x, *best)) best = x;
  });
  if (!best) throw Infeasible("no nonnegative integer solution satisfies the constraints");
  return Solution{s.labels, *best};
}

inline Solution extremize(const StoichSystem& s, MubLabel label, Direction direction) {
  return extremize(s, std::vector<Objective>{{label, direction}});
}

/// Count of one asymmetric variant, identified by its separation pattern.
struct VariantCount {
  MubLabel label;
  SeparationPattern pattern;
  std::uint64_t count = 0;
};

namespace detail {

inline SeparationPattern make_pattern(std::vector<std::vector<std::uint32_t>> blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end());
  return SeparationPattern{std::move(blocks)};
}

}  // namespace detail

/// Splits the asymmetric aggregate counts into variants so that every qupit is
/// pure in exactly p + 1 classes. Returns one witness; throws Infeasible when
/// no split balances.
inline std::vector<VariantCount> variant_assignment(const Solution& sol, const SystemParams& params) {
  using detail::make_pattern;
  const std::int64_t target = static_cast<std::int64_t>(params.p) + 1;
  const std::int64_t pi = sol.count(MubLabel::PI);
  std::vector<VariantCount> out;
  if (params.n_qupits <= 2) return out;
  if (params.n_qupits == 3) {
    const std::int64_t sb = sol.count(MubLabel::SB);
    const std::int64_t each = target - pi;
    if (each < 0 || 3 * each != sb) throw Infeasible("SB count " + std::to_string(sb) + " cannot balance");
    for (std::uint32_t i = 0; i < 3; ++i) {
      std::vector<std::uint32_t> rest;
      for (std::uint32_t j = 0; j < 3; ++j) {
        if (j != i) rest.push_back(j);
      }
      out.push_back({MubLabel::SB, make_pattern({{i}, rest}), static_cast<std::uint64_t>(each)});
    }
    return out;
  }
  if (params.n_qupits != 4) throw InvalidParams("variant assignment needs N <= 4");

  // S2B variant k keeps pair `pairs[k]` entangled and the other two qupits pure.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t a = 0; a < 4; ++a) {
    for (std::uint32_t b = a + 1; b < 4; ++b) pairs.emplace_back(a, b);
  }
  const std::int64_t s2b = sol.count(MubLabel::S2B), sg3 = sol.count(MubLabel::SG3);
  std::vector<std::int64_t> split(6, 0);
  std::vector<std::int64_t> need(4, target - pi);
  bool found = false;
  std::vector<std::int64_t> sg_split(4, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t k, std::int64_t left) {
    if (found) return;
    if (k == 5) {
      split[5] = left;
      std::vector<std::int64_t> rem = need;
      for (std::size_t j = 0; j < 6; ++j) {
        for (std::uint32_t q = 0; q < 4; ++q) {
          if (q != pairs[j].first && q != pairs[j].second) rem[q] -= split[j];
        }
      }
      std::int64_t total = 0;
      for (auto r : rem) {
        if (r < 0) return;
        total += r;
      }
      if (total != sg3) return;
      sg_split = rem;
      found = true;
      return;
    }
    for (std::int64_t c = 0; c <= left && !found; ++c) {
      split[k] = c;
      rec(k + 1, left - c);
    }
  };
  if (pi <= target && s2b >= 0) rec(0, s2b);
  if (!found) {
    throw Infeasible("no per-qupit balanced split of S2B=" + std::to_string(s2b) + ", SG3=" + std::to_string(sg3));
  }
  for (std::size_t j = 0; j < 6; ++j) {
    std::vector<std::vector<std::uint32_t>> blocks = {{pairs[j].first, pairs[j].second}};
    for (std::uint32_t q = 0; q < 4; ++q) {
      if (q != pairs[j].first && q != pairs[j].second) blocks.push_back({q});
    }
    out.push_back({MubLabel::S2B, make_pattern(blocks), static_cast<std::uint64_t>(split[j])});
  }
  for (std::uint32_t q = 0; q < 4; ++q) {
    std::vector<std::uint32_t> rest;
    for (std::uint32_t j = 0; j < 4; ++j) {
      if (j != q) rest.push_back(j);
    }
    out.push_back({MubLabel::SG3, make_pattern({{q}, rest}), static_cast<std::uint64_t>(sg_split[q])});
  }
  // BB pairings carry no pure qupit, so any split balances.
  const std::int64_t bb = sol.count(MubLabel::BB);
  const std::array<std::array<std::uint32_t, 4>, 3> pairings = {{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& pr = pairings[k];
    out.push_back({MubLabel::BB, make_pattern({{pr[0], pr[1]}, {pr[2], pr[3]}}),
                   k == 0 ? static_cast<std::uint64_t>(bb) : 0});
  }
  return out;
}

/// Integer combination of the raw equations: (sum_n m_n col_n + t * count) / divisor.
struct DerivedEquation {
  std::string name;
  std::string combination;
  std::vector<std::int64_t> column_multipliers;
  std::int64_t count_multiplier = 0;
  std::int64_t divisor = 1;
  /// Result, in system label order.
  std::vector<std::int64_t> coefficients;
  std::int64_t rhs = 0;
  std::vector<std::int64_t> expected_coefficients;
  std::int64_t expected_rhs = 0;
  bool matches = false;
};

struct DerivedReport {
  SystemParams params;
  std::vector<MubLabel> labels;
  std::vector<DerivedEquation> equations;
  /// Difference between consecutive three-qupit solutions at this p, in
  /// (PI, SB, G3) order.
  std::vector<std::int64_t> exchange;
  bool exchange_uniform = false;

  bool all_match() const {
    return exchange_uniform && std::all_of(equations.begin(), equations.end(),
                                           [](const DerivedEquation& e) { return e.matches; });
  }
};

namespace detail {

inline void evaluate(const StoichSystem& s, DerivedEquation& eq) {
  const std::size_t nv = s.variables();
  std::vector<std::int64_t> c(nv, 0);
  std::int64_t r = 0;
  for (std::size_t e = 0; e < s.equations(); ++e) {
    const std::int64_t m = e + 1 == s.equations() ? eq.count_multiplier : eq.column_multipliers[e];
    for (std::size_t v = 0; v < nv; ++v) c[v] += m * s.coeff[e][v];
    r += m * s.rhs[e];
  }
  bool divisible = r % eq.divisor == 0;
  for (auto& x : c) {
    divisible = divisible && x % eq.divisor == 0;
    x /= eq.divisor;
  }
  eq.coefficients = c;
  eq.rhs = r / eq.divisor;
  eq.matches = divisible && c == eq.expected_coefficients && eq.rhs == eq.expected_rhs;
}

}  // namespace detail

/// Reduced four-qupit equations for p in {2, 3, 5}, each rebuilt from the raw
/// columns and compared entry by entry with its expected form, plus the
/// three-qupit exchange vector.
inline DerivedReport derived_equations(const SystemParams& params) {
  if (params.n_qupits != 4 || (params.p != 2 && params.p != 3 && params.p != 5)) {
    throw InvalidParams("derived equations are tabulated for N = 4, p in {2, 3, 5}");
  }
  const StoichSystem s = make_system(params);
  DerivedReport rep;
  rep.params = params;
  rep.labels = s.labels;
  // label order: PI S2B SG3 BB G4 C4 [P4]
  auto add = [&](std::string name, std::string comb, std::vector<std::int64_t> cols, std::int64_t t,
                 std::int64_t div, std::vector<std::int64_t> expect, std::int64_t expect_rhs) {
    DerivedEquation e;
    e.name = std::move(name);
    e.combination = std::move(comb);
    e.column_multipliers = std::move(cols);
    e.count_multiplier = t;
    e.divisor = div;
    e.expected_coefficients = std::move(expect);
    e.expected_rhs = expect_rhs;
    detail::evaluate(s, e);
    rep.equations.push_back(std::move(e));
  };
  switch (params.p) {
    case 2:
      add("separable 1-body balance", "(i)", {1, 0, 0, 0}, 0, 1, {4, 2, 1, 0, 0, 0}, 12);
      add("non-BB/G4 count", "((i)+(iii))/8", {1, 0, 1, 0}, 0, 8, {1, 1, 1, 0, 0, 1}, 15);
      add("BB plus G4", "count - ((i)+(iii))/8", {-1, 0, -1, 0}, 8, 8, {0, 0, 0, 1, 1, 0}, 2);
      add("basis count", "(2(ii)+(iii)-(i))/12", {-1, 2, 1, 0}, 0, 12, {1, 1, 1, 1, 1, 1}, 17);
      break;
    case 3:
      add("separable 1-body balance", "(i)/2", {1, 0, 0, 0}, 0, 2, {4, 2, 1, 0, 0, 0, 0}, 16);
      add("2-body balance", "((ii)-3(i))/4", {-3, 1, 0, 0}, 0, 4, {0, 0, 0, 4, 3, 1, 0}, 72);
      add("basis count", "((iii)+2(ii)-6(i))/32", {-6, 2, 1, 0}, 0, 32, {1, 1, 1, 1, 1, 1, 1}, 82);
      add("P4 balance", "count - ((ii)-3(i))/4", {3, -1, 0, 0}, 4, 4, {1, 1, 1, -3, -2, 0, 1}, 10);
      break;
    case 5:
      add("separable 1-body balance", "(i)/4", {1, 0, 0, 0}, 0, 4, {4, 2, 1, 0, 0, 0, 0}, 24);
      add("entangled balance", "((iii)+8(ii)-64(i))/48", {-64, 8, 1, 0}, 0, 48, {0, 0, 0, 8, 5, 3, 2}, 1600);
      add("basis count", "((iii)+2(ii)-22(i))/96", {-22, 2, 1, 0}, 0, 96, {1, 1, 1, 1, 1, 1, 1}, 626);
      add("P4 balance", "3 count - ((iii)+8(ii)-64(i))/48", {64, -8, -1, 0}, 144, 48, {3, 3, 3, -5, -2, 0, 1},
          278);
      break;
  }

  const SolutionSet three = enumerate_solutions(make_system(SystemParams::make(params.p, 3)));
  rep.exchange_uniform = three.solutions.size() >= 2;
  for (std::size_t k = 1; k < three.solutions.size(); ++k) {
    std::vector<std::int64_t> diff(3);
    for (std::size_t v = 0; v < 3; ++v) {
      diff[v] = three.solutions[k - 1].values[v] - three.solutions[k].values[v];
    }
    if (k == 1) rep.exchange = diff;
    else if (diff != rep.exchange) rep.exchange_uniform = false;
  }
  return rep;
}

}  // namespace mubkit
