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
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mubkit/compat_group.hpp"
#include "mubkit/ext_field.hpp"
#include "mubkit/hilbert.hpp"
#include "mubkit/parallel.hpp"

namespace mubkit {

/// p^N + 1 compatibility groups given by generator lists. Nothing is assumed
/// about the lists until verify_spread has run.
struct Complement {
  SystemParams params;
  std::vector<std::vector<PauliOp>> classes;
};

/// Number of Lagrangian subspaces of Z_p^(2N): prod_{i=1..N} (p^i + 1).
inline std::uint64_t lagrangian_count(const SystemParams& params) {
  std::uint64_t total = 1;
  for (std::uint32_t i = 1; i <= params.n_qupits; ++i) {
    const std::uint64_t f = checked_pow(params.p, i) + 1;
    if (total > UINT64_MAX / f) throw GuardExceeded("Lagrangian count overflows");
    total *= f;
  }
  return total;
}

inline constexpr std::uint64_t kLagrangianGuard = 100000;

namespace detail {

inline Digit omega_rows(std::span<const Digit> a, std::span<const Digit> b, std::size_t n, Digit p) {
  std::uint64_t plus = 0, minus = 0;
  for (std::size_t i = 0; i < n; ++i) {
    plus += std::uint64_t{a[i]} * b[n + i];
    minus += std::uint64_t{a[n + i]} * b[i];
  }
  return sub_mod(static_cast<Digit>(plus % p), static_cast<Digit>(minus % p), p);
}

struct RrefLagrangianSearch {
  Digit p;
  std::size_t n;
  std::vector<std::size_t> pivots;
  std::vector<std::vector<std::size_t>> free_cols;
  std::vector<std::vector<Digit>> rows;
  std::vector<ZpMatrix>* out;

  void run(std::size_t r) {
    // rows are filled from the last one up so each new row only needs checking
    // against rows already fixed below it
    const std::size_t width = 2 * n;
    auto& row = rows[r];
    const auto& fc = free_cols[r];
    std::fill(row.begin(), row.end(), 0);
    row[pivots[r]] = 1;
    std::vector<Digit> digits(fc.size(), 0);
    while (true) {
      for (std::size_t k = 0; k < fc.size(); ++k) row[fc[k]] = digits[k];
      bool ok = true;
      for (std::size_t s = r + 1; s < n && ok; ++s) ok = omega_rows(row, rows[s], n, p) == 0;
      if (ok) {
        if (r == 0) {
          ZpMatrix m(p, n, width);
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < width; ++c) m.at(i, c) = rows[i][c];
          }
          out->push_back(std::move(m));
        } else {
          run(r - 1);
        }
      }
      std::size_t k = 0;
      while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
      if (k == digits.size()) break;
    }
  }
};

}  // namespace detail

/// Every Lagrangian of Z_p^(2N) as its rref generator matrix, sorted by the
/// row-major entries read as a base-p numeral.
inline std::vector<ZpMatrix> enumerate_lagrangians(const SystemParams& params,
                                                   std::uint64_t guard = kLagrangianGuard) {
  const std::uint64_t expected = lagrangian_count(params);
  if (expected > guard) {
    throw GuardExceeded(std::to_string(expected) + " Lagrangians exceeds the guard of " + std::to_string(guard));
  }
  const std::size_t n = params.n_qupits;
  const std::size_t width = 2 * n;
  std::vector<ZpMatrix> out;
  out.reserve(expected);
  std::vector<std::size_t> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    detail::RrefLagrangianSearch s{params.p, n, pick, {}, std::vector<std::vector<Digit>>(n, std::vector<Digit>(width)),
                                   &out};
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<std::size_t> fc;
      for (std::size_t c = pick[r] + 1; c < width; ++c) {
        if (std::find(pick.begin(), pick.end(), c) == pick.end()) fc.push_back(c);
      }
      s.free_cols.push_back(std::move(fc));
    }
    s.run(n - 1);
    // next n-combination of {0..2n-1}
    std::size_t i = n;
    while (i-- > 0 && pick[i] == width - n + i) {
    }
    if (i == static_cast<std::size_t>(-1)) break;
    ++pick[i];
    for (std::size_t j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  if (out.size() != expected) {
    throw Error("Lagrangian enumeration produced " + std::to_string(out.size()) + ", expected " +
                std::to_string(expected));
  }
  return out;
}

/// Symmetric matrix S_a[i][j] = Tr(a e_i e_j) in the polynomial basis.
inline ZpMatrix trace_gram(const ExtField& f, const ExtField::Element& a) {
  const unsigned n = f.degree();
  ZpMatrix s(f.characteristic(), n, n);
  const ExtField::Element alpha = n > 1 ? f.basis(1) : f.one();
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = i; j < n; ++j) {
      const Digit t = f.trace(f.mul(a, f.pow(alpha, i + j)));
      s.at(i, j) = t;
      s.at(j, i) = t;
    }
  }
  return s;
}

/// Deterministic spread: the Z class {(0,z)} followed by {(x, S_a x)} for each a
/// in GF(p^N) in index order.
inline Complement field_spread(const SystemParams& params) {
  const ExtField f = field_make(params.p, params.n_qupits);
  const std::size_t n = params.n_qupits;
  const Digit p = params.p;
  // Tr(alpha^k) for every power that appears in a Gram entry
  const ExtField::Element alpha = n > 1 ? f.basis(1) : f.one();
  std::vector<Digit> tr_pow(3 * n - 2, 0);
  for (std::size_t k = 0; k < tr_pow.size(); ++k) tr_pow[k] = f.trace(f.pow(alpha, k));

  Complement c;
  c.params = params;
  std::vector<PauliOp> zclass;
  for (std::size_t i = 0; i < n; ++i) {
    PauliOp op(n);
    op.z[i] = 1;
    zclass.push_back(op);
  }
  c.classes.push_back(std::move(zclass));
  for (std::uint64_t idx = 0; idx < f.size(); ++idx) {
    const ExtField::Element a = f.from_index(idx);
    std::vector<PauliOp> gens;
    for (std::size_t i = 0; i < n; ++i) {
      PauliOp op(n);
      op.x[i] = 1;
      for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t s = 0;
        for (std::size_t l = 0; l < n; ++l) s += std::uint64_t{a[l]} * tr_pow[l + i + j];
        op.z[j] = static_cast<Digit>(s % p);
      }
      gens.push_back(std::move(op));
    }
    c.classes.push_back(std::move(gens));
  }
  return c;
}

/// Validates and enumerates every class; throws on the first bad class.
inline std::vector<CompatGroup> class_groups(const Complement& c) {
  std::vector<CompatGroup> out;
  out.reserve(c.classes.size());
  for (const auto& gens : c.classes) out.push_back(enumerate_group(validate_generators(gens, c.params)));
  return out;
}

struct SpreadReport {
  bool pass = false;
  std::string failure;
  std::size_t classes = 0;
  std::uint64_t covered = 0;
};

/// Checks that every class is Lagrangian, that classes meet only in the
/// identity and that together they cover all p^(2N) - 1 nonidentity operators.
inline SpreadReport verify_spread(const Complement& c) {
  SpreadReport r;
  r.classes = c.classes.size();
  const SystemParams& params = c.params;
  const std::uint64_t want_classes = params.dim + 1;
  if (c.classes.size() != want_classes) {
    r.failure = "expected " + std::to_string(want_classes) + " classes, found " + std::to_string(c.classes.size());
    return r;
  }
  std::vector<std::int32_t> owner(params.phase_space_size(), -1);
  for (std::size_t k = 0; k < c.classes.size(); ++k) {
    CompatGroup g;
    try {
      g = enumerate_group(validate_generators(c.classes[k], params));
    } catch (const Error& e) {
      r.failure = "class " + std::to_string(k) + " is not Lagrangian: " + e.what();
      return r;
    }
    for (std::uint64_t code : g.member_codes()) {
      if (code == 0) continue;
      if (owner[code] >= 0) {
        r.failure = "classes " + std::to_string(owner[code]) + " and " + std::to_string(k) +
                    " intersect nontrivially at " + to_string(decode(code, params.n_qupits, params.p), params.p);
        return r;
      }
      owner[code] = static_cast<std::int32_t>(k);
      ++r.covered;
    }
  }
  if (r.covered != params.phase_space_size() - 1) {
    r.failure = "covered " + std::to_string(r.covered) + " of " + std::to_string(params.phase_space_size() - 1) +
                " nonidentity operators";
    return r;
  }
  r.pass = true;
  return r;
}

/// Occurrences of each label in a complement plus per-basis detail.
struct Distribution {
  std::map<MubLabel, std::uint64_t> counts;
  std::vector<MubType> per_basis;

  std::uint64_t count(MubLabel l) const {
    auto it = counts.find(l);
    return it == counts.end() ? 0 : it->second;
  }
  /// e.g. "PI:3,B:2" in label order.
  std::string summary() const {
    std::string s;
    for (const auto& [l, k] : counts) {
      if (!s.empty()) s += ',';
      s += to_string(l) + ":" + std::to_string(k);
    }
    return s;
  }
};

inline Distribution complement_distribution(const Complement& c) {
  Distribution d;
  for (const auto& g : class_groups(c)) {
    MubType t = classify_basis(g);
    ++d.counts[t.label];
    d.per_basis.push_back(std::move(t));
  }
  return d;
}

struct SearchOptions {
  std::size_t limit = 1;
  /// Required counts for some labels; unspecified labels are unconstrained.
  std::map<MubLabel, std::uint64_t> filter;
  /// Restricts the search to complements whose classes, taken in the order the
  /// search picks them, have increasing canonical index. Faster, but it skips
  /// complements; turn it off for filtered realizability searches.
  bool symmetry_breaking = true;
  /// Node budget per top-level branch; 0 means unlimited.
  std::uint64_t max_nodes = 0;
  std::uint64_t guard = kLagrangianGuard;
};

struct SearchResult {
  std::vector<Complement> complements;
  std::vector<std::map<MubLabel, std::uint64_t>> distributions;
  /// True when the whole search space was explored (no limit or budget stop).
  bool exhausted = true;
  std::uint64_t nodes = 0;
};

namespace detail {

struct SpreadSearch {
  const SystemParams& params;
  const std::vector<CompatGroup>& lags;
  const std::vector<MubLabel>& labels;
  const std::vector<std::vector<std::uint32_t>>& containing;
  const SearchOptions& opt;

  std::vector<std::uint8_t> covered;
  std::vector<std::uint32_t> chosen;
  std::map<MubLabel, std::uint64_t> counts;
  std::vector<std::vector<std::uint32_t>> found;
  std::uint64_t nodes = 0;
  bool stopped = false;

  bool can_take(std::uint32_t li) const {
    for (std::uint64_t code : lags[li].member_codes()) {
      if (code != 0 && covered[code]) return false;
    }
    auto f = opt.filter.find(labels[li]);
    if (f != opt.filter.end()) {
      auto it = counts.find(labels[li]);
      const std::uint64_t have = it == counts.end() ? 0 : it->second;
      if (have >= f->second) return false;
    }
    return true;
  }

  void mark(std::uint32_t li, std::uint8_t v) {
    for (std::uint64_t code : lags[li].member_codes()) {
      if (code != 0) covered[code] = v;
    }
    if (v) ++counts[labels[li]];
    else --counts[labels[li]];
  }

  bool matches_filter() const {
    for (const auto& [l, want] : opt.filter) {
      auto it = counts.find(l);
      if ((it == counts.end() ? 0 : it->second) != want) return false;
    }
    return true;
  }

  void descend(std::uint64_t from) {
    if (stopped) return;
    if (opt.max_nodes != 0 && nodes >= opt.max_nodes) {
      stopped = true;
      return;
    }
    ++nodes;
    if (chosen.size() == params.dim + 1) {
      if (matches_filter()) {
        found.push_back(chosen);
        if (found.size() >= opt.limit) stopped = true;
      }
      return;
    }
    std::uint64_t v = from;
    while (v < covered.size() && covered[v]) ++v;
    if (v == covered.size()) return;
    for (std::uint32_t li : containing[v]) {
      if (opt.symmetry_breaking && !chosen.empty() && li <= chosen.back()) continue;
      if (!can_take(li)) continue;
      chosen.push_back(li);
      mark(li, 1);
      descend(v + 1);
      mark(li, 0);
      chosen.pop_back();
      if (stopped) return;
    }
  }
};

}  // namespace detail

/// Depth-first exact cover of the nonzero vectors by Lagrangians, always
/// branching on the smallest uncovered vector. Top-level branches run in
/// parallel and are merged in canonical order.
inline SearchResult search_spreads(const SystemParams& params, const SearchOptions& opt) {
  const std::vector<ZpMatrix> mats = enumerate_lagrangians(params, opt.guard);
  std::vector<CompatGroup> lags;
  lags.reserve(mats.size());
  for (const auto& m : mats) lags.push_back(CompatGroup::from_lagrangian_matrix(params, m));
  std::vector<MubLabel> labels(lags.size());
  parallel_for(lags.size(), [&](std::size_t i) { labels[i] = classify_basis(lags[i]).label; });
  std::vector<std::vector<std::uint32_t>> containing(params.phase_space_size());
  for (std::uint32_t li = 0; li < lags.size(); ++li) {
    for (std::uint64_t code : lags[li].member_codes()) {
      if (code != 0) containing[code].push_back(li);
    }
  }

  SearchResult result;
  if (opt.limit == 0) return result;
  const auto& top = containing[1];
  std::vector<detail::SpreadSearch> branches;
  branches.reserve(top.size());
  for (std::size_t b = 0; b < top.size(); ++b) {
    branches.push_back(detail::SpreadSearch{params, lags, labels, containing, opt,
                                            std::vector<std::uint8_t>(params.phase_space_size(), 0), {}, {}, {}, 0,
                                            false});
  }
  parallel_for(top.size(), [&](std::size_t b) {
    auto& s = branches[b];
    const std::uint32_t li = top[b];
    if (!s.can_take(li)) return;
    s.chosen.push_back(li);
    s.mark(li, 1);
    s.descend(2);
  });
  for (auto& s : branches) {
    result.nodes += s.nodes;
    if (s.stopped) result.exhausted = false;
    for (auto& pick : s.found) {
      if (result.complements.size() >= opt.limit) {
        result.exhausted = false;
        break;
      }
      std::sort(pick.begin(), pick.end());
      Complement c;
      c.params = params;
      std::map<MubLabel, std::uint64_t> dist;
      for (std::uint32_t li : pick) {
        c.classes.push_back(lags[li].canonical_generators());
        ++dist[labels[li]];
      }
      result.complements.push_back(std::move(c));
      result.distributions.push_back(std::move(dist));
    }
  }
  return result;
}

struct PurityCensus {
  std::vector<std::uint64_t> pure_count;
  std::vector<std::uint64_t> entangled_count;
  /// Identity local factors at each qupit, summed over classes with each
  /// class's global identity excluded.
  std::vector<std::uint64_t> identity_factors;
};

inline PurityCensus compute_purity_census(const Complement& c) {
  const std::size_t n = c.params.n_qupits;
  const Digit p = c.params.p;
  PurityCensus pc{std::vector<std::uint64_t>(n, 0), std::vector<std::uint64_t>(n, 0),
                  std::vector<std::uint64_t>(n, 0)};
  for (const auto& g : class_groups(c)) {
    for (std::size_t i = 0; i < n; ++i) {
      const FactorDistribution fd = qupit_factor_distribution(g, i);
      if (fd.kind == Purity::Pure) ++pc.pure_count[i];
      else ++pc.entangled_count[i];
    }
    for (std::uint64_t code : g.member_codes()) {
      if (code == 0) continue;
      const PauliOp m = decode(code, n, p);
      for (std::size_t i = 0; i < n; ++i) {
        if (m.x[i] == 0 && m.z[i] == 0) ++pc.identity_factors[i];
      }
    }
  }
  return pc;
}

/// Per-qupit purity counts, checked against p+1 pure and p^N - p entangled,
/// and the identity-factor accounting
///   p^(2N-2) - 1 = nu_S (p^(N-1) - 1) + (p^N + 1 - nu_S)(p^(N-2) - 1).
inline PurityCensus purity_census(const Complement& c) {
  const PurityCensus pc = compute_purity_census(c);
  const std::uint64_t p = c.params.p;
  const std::uint32_t n = c.params.n_qupits;
  const std::uint64_t d = c.params.dim;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string q = "qupit " + std::to_string(i + 1);
    if (pc.pure_count[i] != p + 1) {
      throw CensusViolation(q + " is pure in " + std::to_string(pc.pure_count[i]) + " classes, expected " +
                            std::to_string(p + 1));
    }
    if (pc.entangled_count[i] != d - p) {
      throw CensusViolation(q + " is entangled in " + std::to_string(pc.entangled_count[i]) + " classes, expected " +
                            std::to_string(d - p));
    }
    const std::uint64_t lhs = checked_pow(p, 2 * n - 2) - 1;
    std::uint64_t rhs = pc.pure_count[i] * (checked_pow(p, n - 1) - 1);
    if (n >= 2) rhs += (d + 1 - pc.pure_count[i]) * (checked_pow(p, n - 2) - 1);
    if (pc.identity_factors[i] != lhs || rhs != lhs) {
      throw CensusViolation(q + " identity-factor tally " + std::to_string(pc.identity_factors[i]) +
                            " does not balance " + std::to_string(lhs));
    }
  }
  return pc;
}

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  friend bool operator==(const Rational&, const Rational&) = default;
  std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }
};

inline Rational make_rational(std::uint64_t num, std::uint64_t den) {
  const std::uint64_t g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

/// Fraction of the classes in which the qupit is pure.
inline Rational average_purity(const Complement& c, std::size_t qupit) {
  const PurityCensus pc = purity_census(c);
  return make_rational(pc.pure_count.at(qupit), pc.pure_count.at(qupit) + pc.entangled_count.at(qupit));
}

struct HilbertOptions {
  /// Full pairwise checks up to this dimension, sampling above it.
  std::uint64_t max_full_dim = 81;
  std::size_t samples = 10000;
  std::uint64_t seed = 20260101;
};

struct HilbertReport {
  bool sampled = false;
  std::size_t bases = 0;
  std::uint64_t overlaps_checked = 0;
  double max_overlap_deviation = 0.0;
  /// Projector idempotence/trace/Hermiticity with every projector built
  /// (full mode), or the eigen-equation residual on sampled columns.
  double max_projector_deviation = 0.0;
  double max_completeness_deviation = 0.0;
  double max_eigen_deviation = 0.0;
  /// Distance of each qupit purity from the nearer of 0 and 1.
  double max_purity_deviation = 0.0;
  bool purity_constant = true;
  bool purity_matches_symplectic = true;

  bool pass(double tol = kHilbertTolerance) const {
    return max_overlap_deviation < tol && max_projector_deviation < tol && max_completeness_deviation < tol &&
           max_eigen_deviation < tol && max_purity_deviation < tol && purity_constant && purity_matches_symplectic;
  }
};

namespace detail {

inline void tally_purities(HilbertReport& rpt, const StateVector& v, const SystemParams& params,
                           const std::vector<Purity>& expected, std::vector<std::optional<bool>>& seen) {
  for (std::size_t i = 0; i < params.n_qupits; ++i) {
    const double pu = purity(reduced_density(v, i, params));
    const bool pure = pu > 0.5;
    rpt.max_purity_deviation = std::max(rpt.max_purity_deviation, pure ? std::abs(pu - 1.0) : std::abs(pu));
    if (pure != (expected[i] == Purity::Pure)) rpt.purity_matches_symplectic = false;
    if (seen[i] && *seen[i] != pure) rpt.purity_constant = false;
    seen[i] = pure;
  }
}

inline double column_eigen_deviation(const GroupRepresentation& rep, const GeneratorSet& gs, const StateVector& v,
                                     std::uint64_t k) {
  const SystemParams& params = gs.params;
  const auto u = roots_of_unity(phase_order(params.p));
  const auto w = roots_of_unity(params.p);
  double worst = 0.0;
  for (std::size_t i = 0; i < params.n_qupits; ++i) {
    const Monomial& g = rep.element(checked_pow(params.p, i));
    const std::uint64_t ki = (k / checked_pow(params.p, params.n_qupits - 1 - i)) % params.p;
    StateVector gv = StateVector::Zero(v.size());
    for (Eigen::Index j = 0; j < v.size(); ++j) gv(g.target[j]) += u[g.phase[j]] * v(j);
    worst = std::max(worst, (gv - w[ki] * v).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace detail

/// Explicit state-space checks of a verified complement: unbiasedness of every
/// cross-basis overlap, projector structure, and 0/1 qupit purities that agree
/// with the symplectic pure/entangled verdict.
inline HilbertReport hilbert_verify(const Complement& c, const HilbertOptions& opt = {}) {
  const SystemParams& params = c.params;
  const std::vector<CompatGroup> groups = class_groups(c);
  HilbertReport rpt;
  rpt.bases = groups.size();
  std::vector<std::vector<Purity>> expected(groups.size());
  for (std::size_t b = 0; b < groups.size(); ++b) {
    for (std::size_t i = 0; i < params.n_qupits; ++i) {
      expected[b].push_back(qupit_factor_distribution(groups[b], i).kind);
    }
  }
  const double inv_d = 1.0 / static_cast<double>(params.dim);

  if (params.dim <= opt.max_full_dim) {
    std::vector<ComplexMatrix> bases(groups.size());
    std::vector<HilbertReport> part(groups.size());
    parallel_for(groups.size(), [&](std::size_t b) {
      const GeneratorSet gs = groups[b].generator_set();
      const GroupRepresentation rep(gs);
      const ProjectorReport pr = check_projectors(rep);
      auto& r = part[b];
      r.max_projector_deviation = std::max({pr.max_idempotence, pr.max_trace, pr.max_hermitian});
      r.max_completeness_deviation = pr.completeness;
      const Eigen::Index d = static_cast<Eigen::Index>(params.dim);
      bases[b].resize(d, d);
      std::vector<std::optional<bool>> seen(params.n_qupits);
      for (Eigen::Index k = 0; k < d; ++k) {
        const StateVector v = rep.eigenvector(static_cast<std::uint64_t>(k));
        bases[b].col(k) = v;
        r.max_eigen_deviation =
            std::max(r.max_eigen_deviation, detail::column_eigen_deviation(rep, gs, v, static_cast<std::uint64_t>(k)));
        detail::tally_purities(r, v, params, expected[b], seen);
      }
    });
    for (const auto& r : part) {
      rpt.max_projector_deviation = std::max(rpt.max_projector_deviation, r.max_projector_deviation);
      rpt.max_completeness_deviation = std::max(rpt.max_completeness_deviation, r.max_completeness_deviation);
      rpt.max_eigen_deviation = std::max(rpt.max_eigen_deviation, r.max_eigen_deviation);
      rpt.max_purity_deviation = std::max(rpt.max_purity_deviation, r.max_purity_deviation);
      rpt.purity_constant = rpt.purity_constant && r.purity_constant;
      rpt.purity_matches_symplectic = rpt.purity_matches_symplectic && r.purity_matches_symplectic;
    }
    std::vector<double> row_worst(groups.size(), 0.0);
    parallel_for(groups.size(), [&](std::size_t a) {
      for (std::size_t b = a + 1; b < groups.size(); ++b) {
        const ComplexMatrix ov = bases[a].adjoint() * bases[b];
        row_worst[a] = std::max(row_worst[a], (ov.cwiseAbs2().array() - inv_d).abs().maxCoeff());
      }
    });
    for (double w : row_worst) rpt.max_overlap_deviation = std::max(rpt.max_overlap_deviation, w);
    rpt.overlaps_checked = groups.size() * (groups.size() - 1) / 2 * params.dim * params.dim;
    return rpt;
  }

  // Sampled mode: random class pairs, 4 random columns from each side.
  rpt.sampled = true;
  constexpr std::size_t kColumnsPerSide = 4;
  const std::size_t pairs = std::max<std::size_t>(1, opt.samples / (kColumnsPerSide * kColumnsPerSide));
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::size_t> pick_class(0, groups.size() - 1);
  std::uniform_int_distribution<std::uint64_t> pick_col(0, params.dim - 1);
  struct Job {
    std::size_t a, b;
    std::array<std::uint64_t, kColumnsPerSide> ca, cb;
  };
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < pairs; ++s) {
    Job j{};
    j.a = pick_class(rng);
    do j.b = pick_class(rng);
    while (j.b == j.a);
    for (auto& x : j.ca) x = pick_col(rng);
    for (auto& x : j.cb) x = pick_col(rng);
    jobs.push_back(j);
  }
  std::vector<HilbertReport> part(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t t) {
    const Job& j = jobs[t];
    auto& r = part[t];
    std::array<std::vector<StateVector>, 2> cols;
    const std::array<std::size_t, 2> cls = {j.a, j.b};
    const std::array<const std::array<std::uint64_t, kColumnsPerSide>*, 2> want = {&j.ca, &j.cb};
    for (int side = 0; side < 2; ++side) {
      const GeneratorSet gs = groups[cls[side]].generator_set();
      const GroupRepresentation rep(gs);
      std::vector<std::optional<bool>> seen(params.n_qupits);
      for (std::uint64_t k : *want[side]) {
        StateVector v = rep.eigenvector(k);
        r.max_projector_deviation = std::max(r.max_projector_deviation, std::abs(v.norm() - 1.0));
        r.max_eigen_deviation = std::max(r.max_eigen_deviation, detail::column_eigen_deviation(rep, gs, v, k));
        detail::tally_purities(r, v, params, expected[cls[side]], seen);
        cols[side].push_back(std::move(v));
      }
    }
    for (const auto& va : cols[0]) {
      for (const auto& vb : cols[1]) {
        r.max_overlap_deviation = std::max(r.max_overlap_deviation, std::abs(std::norm(va.dot(vb)) - inv_d));
        ++r.overlaps_checked;
      }
    }
  });
  for (const auto& r : part) {
    rpt.overlaps_checked += r.overlaps_checked;
    rpt.max_overlap_deviation = std::max(rpt.max_overlap_deviation, r.max_overlap_deviation);
    rpt.max_projector_deviation = std::max(rpt.max_projector_deviation, r.max_projector_deviation);
    rpt.max_eigen_deviation = std::max(rpt.max_eigen_deviation, r.max_eigen_deviation);
    rpt.max_purity_deviation = std::max(rpt.max_purity_deviation, r.max_purity_deviation);
    rpt.purity_constant = rpt.purity_constant && r.purity_constant;
    rpt.purity_matches_symplectic = rpt.purity_matches_symplectic && r.purity_matches_symplectic;
  }
  return rpt;
}

}  // namespace mubkit
