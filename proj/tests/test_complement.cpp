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

#include <cstdlib>
#include <random>

#include <gtest/gtest.h>

#include "mubkit/complement.hpp"
#include "mubkit/io.hpp"
#include "mubkit/stoich.hpp"
#include "oracles.hpp"

namespace {

using namespace mubkit;

using Members = std::set<std::vector<Digit>>;

bool isotropic(const Members& s, std::size_t n, Digit p) {
  for (const auto& a : s) {
    for (const auto& b : s) {
      std::uint64_t f = 0;
      for (std::size_t i = 0; i < n; ++i) f += std::uint64_t{a[i]} * b[n + i] + std::uint64_t{p - a[n + i]} * b[i];
      if (f % p) return false;
    }
  }
  return true;
}

/// All Lagrangians as member sets, by spanning every N-tuple of vectors.
std::set<Members> brute_force_lagrangians(Digit p, std::size_t n) {
  const std::uint64_t q = oracle::ipow(p, 2 * n);
  std::set<Members> out;
  std::vector<std::uint64_t> idx(n, 0);
  while (true) {
    std::vector<std::vector<Digit>> rows;
    for (auto c : idx) rows.push_back(oracle::rows_of({decode(c, n, p)}).front());
    const Members s = oracle::span(rows, p);
    if (s.size() == oracle::ipow(p, n) && isotropic(s, n, p)) out.insert(s);
    std::size_t k = 0;
    while (k < n && ++idx[k] == q) idx[k++] = 0;
    if (k == n) break;
  }
  return out;
}

TEST(Lagrangians, CountFormula) {
  EXPECT_EQ(lagrangian_count(SystemParams::make(2, 1)), 3u);
  EXPECT_EQ(lagrangian_count(SystemParams::make(2, 4)), 2295u);
  EXPECT_EQ(lagrangian_count(SystemParams::make(3, 4)), 91840u);
  EXPECT_THROW(enumerate_lagrangians(SystemParams::make(5, 4)), GuardExceeded);
  EXPECT_THROW(enumerate_lagrangians(SystemParams::make(2, 4), 1000), GuardExceeded);
}

TEST(Lagrangians, EnumerationMatchesBruteForce) {
  for (auto [p, n] : std::vector<std::pair<Digit, std::size_t>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}, {5, 2}, {2, 3}}) {
    const auto params = SystemParams::make(p, n);
    const auto mats = enumerate_lagrangians(params);
    EXPECT_TRUE(std::is_sorted(mats.begin(), mats.end()));
    std::set<Members> got;
    for (const auto& m : mats) {
      EXPECT_EQ(rref(m), m);
      const CompatGroup g = CompatGroup::from_lagrangian_matrix(params, m);
      Members s;
      for (std::size_t k = 0; k < g.size(); ++k) s.insert(symplectic_vector(g.member(k)));
      got.insert(s);
    }
    EXPECT_EQ(got.size(), mats.size());
    EXPECT_EQ(got, brute_force_lagrangians(p, n)) << "p=" << p << " n=" << n;
  }
}

std::vector<std::pair<Digit, std::uint32_t>> small_fields() {
  std::vector<std::pair<Digit, std::uint32_t>> out;
  for (Digit p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u}) {
    for (std::uint32_t n = 1; oracle::ipow(p, n) <= 625; ++n) out.emplace_back(p, n);
  }
  return out;
}

TEST(FieldSpread, GramFamilySymmetricWithInvertibleDifferences) {
  for (auto [p, n] : small_fields()) {
    const ExtField f = field_make(p, n);
    std::vector<ZpMatrix> gram;
    for (std::uint64_t i = 0; i < f.size(); ++i) gram.push_back(trace_gram(f, f.from_index(i)));
    for (std::uint64_t a = 0; a < f.size(); ++a) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) ASSERT_EQ(gram[a].at(i, j), gram[a].at(j, i));
      }
      for (std::uint64_t b = a + 1; b < f.size(); ++b) {
        ZpMatrix d(p, n, n);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) d.at(i, j) = sub_mod(gram[a].at(i, j), gram[b].at(i, j), p);
        }
        ASSERT_EQ(rank(d), n) << "p=" << p << " n=" << n << " a=" << a << " b=" << b;
      }
    }
  }
}

TEST(FieldSpread, ClassesMatchGramMatrices) {
  const auto params = SystemParams::make(3, 3);
  const Complement c = field_spread(params);
  const ExtField f = field_make(3, 3);
  ASSERT_EQ(c.classes.size(), 28u);
  for (std::uint64_t a = 0; a < f.size(); ++a) {
    const ZpMatrix s = trace_gram(f, f.from_index(a));
    for (std::size_t i = 0; i < 3; ++i) {
      const PauliOp& g = c.classes[a + 1][i];
      for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_EQ(g.x[j], i == j ? 1u : 0u);
        EXPECT_EQ(g.z[j], s.at(i, j));
      }
    }
  }
}

TEST(FieldSpread, VerifiesForAllSmallDimensions) {
  for (auto [p, n] : small_fields()) {
    const SpreadReport r = verify_spread(field_spread(SystemParams::make(p, n)));
    EXPECT_TRUE(r.pass) << "p=" << p << " n=" << n << ": " << r.failure;
    EXPECT_EQ(r.covered, oracle::ipow(p, 2 * n) - 1);
  }
}

TEST(FieldSpread, Examples) {
  const Complement q = field_spread(SystemParams::make(2, 1));
  ASSERT_EQ(q.classes.size(), 3u);
  EXPECT_EQ(to_string(q.classes[0][0], 2), "Z");
  EXPECT_EQ(to_string(q.classes[1][0], 2), "X");
  EXPECT_EQ(to_string(q.classes[2][0], 2), "Y");
  const SpreadReport r = verify_spread(field_spread(SystemParams::make(3, 2)));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.classes, 10u);
  EXPECT_EQ(r.covered, 80u);
  const SpreadReport big = verify_spread(field_spread(SystemParams::make(5, 4)));
  EXPECT_TRUE(big.pass);
  EXPECT_EQ(big.classes, 626u);
  EXPECT_EQ(big.covered, 390624u);
}

TEST(VerifySpread, NegativeControls) {
  Complement c = field_spread(SystemParams::make(2, 2));
  Complement dup = c;
  dup.classes[2] = dup.classes[1];
  SpreadReport r = verify_spread(dup);
  EXPECT_FALSE(r.pass);
  EXPECT_NE(r.failure.find("intersect"), std::string::npos);
  Complement short_c = c;
  short_c.classes.pop_back();
  EXPECT_FALSE(verify_spread(short_c).pass);
  Complement noncomm = c;
  noncomm.classes[0] = parse_generators({"XI", "ZI"}, 2);
  r = verify_spread(noncomm);
  EXPECT_FALSE(r.pass);
  EXPECT_NE(r.failure.find("class 0"), std::string::npos);
}

TEST(Census, CountsPerQupit) {
  for (auto [p, n] : std::vector<std::pair<Digit, std::uint32_t>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {3, 4}, {5, 4}}) {
    const auto params = SystemParams::make(p, n);
    const PurityCensus pc = purity_census(field_spread(params));
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(pc.pure_count[i], p + 1u);
      EXPECT_EQ(pc.entangled_count[i], params.dim - p);
      EXPECT_EQ(pc.identity_factors[i], oracle::ipow(p, 2 * n - 2) - 1);
    }
  }
}

TEST(Census, RejectsNonComplement) {
  Complement c = field_spread(SystemParams::make(2, 2));
  for (auto& g : c.classes) g = c.classes[0];
  EXPECT_THROW(purity_census(c), CensusViolation);
}

TEST(Census, AveragePurity) {
  EXPECT_EQ(average_purity(field_spread(SystemParams::make(2, 2)), 0), (Rational{3, 5}));
  EXPECT_EQ(average_purity(field_spread(SystemParams::make(2, 3)), 1), (Rational{1, 3}));
  EXPECT_EQ(average_purity(field_spread(SystemParams::make(3, 4)), 3), (Rational{2, 41}));
}

TEST(Distribution, TwoQupitsAreStandard) {
  for (Digit p : {2u, 3u, 5u, 7u}) {
    const Distribution d = complement_distribution(field_spread(SystemParams::make(p, 2)));
    EXPECT_EQ(d.count(MubLabel::PI), p + 1u);
    EXPECT_EQ(d.count(MubLabel::B), std::uint64_t{p} * p - p);
    EXPECT_EQ(d.per_basis.size(), std::uint64_t{p} * p + 1);
  }
}

Solution as_solution(const Distribution& d, const StoichSystem& s) {
  Solution sol{s.labels, std::vector<std::int64_t>(s.labels.size(), 0)};
  for (std::size_t v = 0; v < s.labels.size(); ++v) sol.values[v] = static_cast<std::int64_t>(d.count(s.labels[v]));
  return sol;
}

TEST(Distribution, FieldSpreadsSatisfyStoichiometry) {
  for (auto [p, n] : std::vector<std::pair<Digit, std::uint32_t>>{{2, 3}, {3, 3}, {5, 3}, {2, 4}, {3, 4}, {5, 4}}) {
    const auto params = SystemParams::make(p, n);
    const Distribution d = complement_distribution(field_spread(params));
    EXPECT_EQ(d.count(MubLabel::OTHER), 0u) << "p=" << p << " n=" << n;
    const StoichSystem s = make_system(params);
    const Solution sol = as_solution(d, s);
    EXPECT_TRUE(satisfies(s, sol.values)) << sol.to_string();
    EXPECT_NO_THROW(variant_assignment(sol, params));
  }
}

TEST(Distribution, FourQubitExampleCountsSatisfyConstraints) {
  const StoichSystem s = make_system(SystemParams::make(2, 4));
  Solution sol{s.labels, std::vector<std::int64_t>(s.labels.size(), 0)};
  sol.values[s.index_of(MubLabel::PI)] = 3;
  sol.values[s.index_of(MubLabel::BB)] = 2;
  sol.values[s.index_of(MubLabel::C4)] = 12;
  EXPECT_TRUE(satisfies(s, sol.values));
}

TEST(Search, TwoQubitSpreadsAreStandard) {
  SearchOptions opt;
  opt.limit = 1000;
  opt.symmetry_breaking = false;
  const SearchResult r = search_spreads(SystemParams::make(2, 2), opt);
  EXPECT_TRUE(r.exhausted);
  EXPECT_EQ(r.complements.size(), 6u);
  for (std::size_t k = 0; k < r.complements.size(); ++k) {
    EXPECT_TRUE(verify_spread(r.complements[k]).pass);
    EXPECT_EQ(r.distributions[k], (std::map<MubLabel, std::uint64_t>{{MubLabel::PI, 3}, {MubLabel::B, 2}}));
  }
}

TEST(Search, SymmetryBreakingRestrictsTheSearch) {
  SearchOptions on;
  on.limit = 100000;
  SearchOptions off = on;
  off.symmetry_breaking = false;
  const auto params = SystemParams::make(2, 2);
  EXPECT_LE(search_spreads(params, on).complements.size(), search_spreads(params, off).complements.size());
}

TEST(Search, ThreeQubitsWithoutGhz) {
  SearchOptions opt;
  opt.filter = {{MubLabel::PI, 0}, {MubLabel::SB, 9}};
  opt.symmetry_breaking = false;
  const SearchResult r = search_spreads(SystemParams::make(2, 3), opt);
  ASSERT_EQ(r.complements.size(), 1u);
  EXPECT_TRUE(verify_spread(r.complements[0]).pass);
  const Distribution d = complement_distribution(r.complements[0]);
  EXPECT_EQ(d.count(MubLabel::SB), 9u);
}

TEST(Search, ThreeQubitSweepStaysInsideTheAllowedSet) {
  SearchOptions opt;
  opt.limit = 2000;
  opt.symmetry_breaking = false;
  const SearchResult r = search_spreads(SystemParams::make(2, 3), opt);
  ASSERT_FALSE(r.complements.empty());
  const std::set<std::vector<std::uint64_t>> allowed = {{3, 0, 6}, {2, 3, 4}, {1, 6, 2}, {0, 9, 0}};
  for (const auto& dist : r.distributions) {
    auto get = [&](MubLabel l) { return dist.contains(l) ? dist.at(l) : 0; };
    EXPECT_TRUE(allowed.contains({get(MubLabel::PI), get(MubLabel::SB), get(MubLabel::G3)}));
  }
}

TEST(Search, DeterministicAcrossWorkerCounts) {
  SearchOptions opt;
  opt.limit = 25;
  opt.symmetry_breaking = false;
  const auto params = SystemParams::make(2, 3);
  ::setenv("MUBKIT_THREADS", "1", 1);
  const SearchResult one = search_spreads(params, opt);
  ::setenv("MUBKIT_THREADS", "4", 1);
  const SearchResult four = search_spreads(params, opt);
  ::unsetenv("MUBKIT_THREADS");
  ASSERT_EQ(one.complements.size(), four.complements.size());
  for (std::size_t k = 0; k < one.complements.size(); ++k) {
    EXPECT_EQ(to_json(one.complements[k]), to_json(four.complements[k]));
  }
}

TEST(Search, GuardAndBudget) {
  EXPECT_THROW(search_spreads(SystemParams::make(5, 4), {}), GuardExceeded);
  SearchOptions opt;
  opt.max_nodes = 3;
  opt.symmetry_breaking = false;
  const SearchResult r = search_spreads(SystemParams::make(2, 3), opt);
  EXPECT_FALSE(r.exhausted);
}

TEST(HilbertVerify, FullAndSampledModes) {
  const Complement c = field_spread(SystemParams::make(3, 2));
  const HilbertReport full = hilbert_verify(c);
  EXPECT_FALSE(full.sampled);
  EXPECT_TRUE(full.pass());
  EXPECT_EQ(full.overlaps_checked, 45u * 81u);
  HilbertOptions opt;
  opt.max_full_dim = 4;
  opt.samples = 320;
  const HilbertReport sampled = hilbert_verify(c, opt);
  EXPECT_TRUE(sampled.sampled);
  EXPECT_TRUE(sampled.pass());
  EXPECT_EQ(sampled.overlaps_checked, 320u);
}

TEST(Json, RoundTrip) {
  const Complement c = field_spread(SystemParams::make(3, 2));
  const Json j = to_json(c);
  const Complement back = complement_from_json(j);
  EXPECT_EQ(back.classes, c.classes);
  EXPECT_EQ(to_json(back).dump(), j.dump());
  EXPECT_THROW(complement_from_json(Json::parse(R"({"p":3})")), MalformedInput);
  EXPECT_THROW(complement_from_json(Json::parse(R"({"p":4,"n":1,"classes":[]})")), MalformedInput);
  EXPECT_THROW(complement_from_json(Json::parse(R"({"p":3,"n":1,"classes":[{"gens":[{"x":[3],"z":[0]}]}]})")),
               MalformedInput);
  const Json dist = to_json(complement_distribution(c));
  EXPECT_EQ(dist["counts"]["PI"], 4);
  EXPECT_EQ(dist["counts"]["B"], 6);
  EXPECT_EQ(dist["per_basis"].size(), 10u);
}

}  // namespace
