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
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mubkit/pauli.hpp"
#include "mubkit/zp.hpp"

namespace mubkit {

/// N pairwise-commuting, independent Pauli operators.
struct GeneratorSet {
  SystemParams params;
  std::vector<PauliOp> gens;
};

/// N x 2N matrix whose rows are the (x|z) vectors of the operators.
inline ZpMatrix generator_matrix(std::span<const PauliOp> ops, Digit p) {
  const std::size_t n = ops.empty() ? 0 : ops.front().size();
  ZpMatrix m(p, ops.size(), 2 * n);
  for (std::size_t r = 0; r < ops.size(); ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      m.at(r, i) = ops[r].x[i] % p;
      m.at(r, n + i) = ops[r].z[i] % p;
    }
  }
  return m;
}

/// Accepts iff there are N operators on N sites that pairwise commute and are
/// linearly independent over Z_p.
inline GeneratorSet validate_generators(std::vector<PauliOp> gens, const SystemParams& params) {
  const std::size_t n = params.n_qupits;
  if (gens.size() != n) {
    throw InvalidParams("expected " + std::to_string(n) + " generators, got " + std::to_string(gens.size()));
  }
  for (const auto& g : gens) {
    if (g.x.size() != n || g.z.size() != n) throw InvalidParams("generator has wrong number of sites");
    for (std::size_t i = 0; i < n; ++i) {
      if (g.x[i] >= params.p || g.z[i] >= params.p) throw InvalidParams("generator exponent out of range");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (symplectic_form(gens[i], gens[j], params.p) != 0) throw NonCommuting(i, j);
    }
  }
  const std::size_t r = rank(generator_matrix(gens, params.p));
  if (r < n) throw Dependent(r);
  return GeneratorSet{params, std::move(gens)};
}

/// Histogram of body counts over non-identity members; counts[n - 1] is the
/// number of n-body operators.
struct NBodyProfile {
  std::vector<std::uint64_t> counts;

  std::uint64_t at(std::size_t n_body) const { return counts.at(n_body - 1); }
  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }
  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < counts.size(); ++i) os << (i ? "," : "") << counts[i];
    os << ')';
    return os.str();
  }
  friend bool operator==(const NBodyProfile&, const NBodyProfile&) = default;
  friend auto operator<=>(const NBodyProfile&, const NBodyProfile&) = default;
};

/// A Lagrangian subspace of Z_p^(2N) with its canonical (rref) generator matrix
/// and its p^N members as sorted symplectic codes (code 0 is the identity).
class CompatGroup {
 public:
  CompatGroup() = default;

  /// Builds from a matrix whose rows are already known to span a Lagrangian.
  static CompatGroup from_lagrangian_matrix(const SystemParams& params, const ZpMatrix& m) {
    CompatGroup g;
    g.params_ = params;
    g.matrix_ = rref(m);
    g.enumerate();
    return g;
  }

  const SystemParams& params() const { return params_; }
  const ZpMatrix& generator_matrix() const { return matrix_; }
  const std::vector<std::uint64_t>& member_codes() const { return members_; }
  std::size_t size() const { return members_.size(); }

  PauliOp member(std::size_t k) const { return decode(members_[k], params_.n_qupits, params_.p); }

  bool contains(std::uint64_t code) const { return std::binary_search(members_.begin(), members_.end(), code); }

  /// Rows of the canonical matrix as operators.
  std::vector<PauliOp> canonical_generators() const {
    std::vector<PauliOp> out;
    for (std::size_t r = 0; r < matrix_.rows(); ++r) out.push_back(from_symplectic_vector(matrix_.row(r)));
    return out;
  }

  GeneratorSet generator_set() const { return GeneratorSet{params_, canonical_generators()}; }

  friend bool operator==(const CompatGroup& a, const CompatGroup& b) {
    return a.params_ == b.params_ && a.matrix_ == b.matrix_;
  }

 private:
  void enumerate() {
    const std::size_t n = params_.n_qupits;
    const Digit p = params_.p;
    const std::size_t width = 2 * n;
    members_.clear();
    members_.reserve(params_.dim);
    std::vector<Digit> coeff(n, 0);
    std::vector<Digit> vec(width, 0);
    while (true) {
      std::uint64_t code = 0;
      for (std::size_t c = width; c-- > 0;) code = code * p + vec[c];
      members_.push_back(code);
      // mixed-radix increment of coeff, updating vec incrementally
      std::size_t k = 0;
      while (k < n) {
        const auto row = matrix_.row(k);
        if (coeff[k] + 1 < p) {
          ++coeff[k];
          for (std::size_t c = 0; c < width; ++c) vec[c] = add_mod(vec[c], row[c], p);
          break;
        }
        coeff[k] = 0;
        // undo p-1 additions of row k == add row k once
        for (std::size_t c = 0; c < width; ++c) vec[c] = add_mod(vec[c], row[c], p);
        ++k;
      }
      if (k == n) break;
    }
    std::sort(members_.begin(), members_.end());
  }

  SystemParams params_;
  ZpMatrix matrix_;
  std::vector<std::uint64_t> members_;
};

/// All p^N exponent combinations of the generators.
inline CompatGroup enumerate_group(const GeneratorSet& gs) {
  return CompatGroup::from_lagrangian_matrix(gs.params, generator_matrix(gs.gens, gs.params.p));
}

inline NBodyProfile nbody_profile(const CompatGroup& g) {
  const std::size_t n = g.params().n_qupits;
  NBodyProfile prof{std::vector<std::uint64_t>(n, 0)};
  for (std::size_t k = 0; k < g.size(); ++k) {
    const std::size_t b = body_count(g.member(k));
    if (b > 0) ++prof.counts[b - 1];
  }
  return prof;
}

enum class Purity { Pure, Entangled };

/// Shape of the multiset of local factors (x_i, z_i) on one qupit over all
/// group members, identity included.
struct FactorDistribution {
  Purity kind = Purity::Pure;
  /// For Pure: the local operator generating the cyclic set, normalized so its
  /// first nonzero exponent is 1. Unset for Entangled.
  std::optional<std::pair<Digit, Digit>> local_op;
  /// Occurrences of each local class: p^(N-1) when pure, p^(N-2) when entangled.
  std::uint64_t multiplicity = 0;
};

inline FactorDistribution qupit_factor_distribution(const CompatGroup& g, std::size_t qupit) {
  const std::size_t n = g.params().n_qupits;
  const Digit p = g.params().p;
  if (qupit >= n) throw InvalidParams("qupit index out of range");
  std::vector<std::uint64_t> tally(std::size_t{p} * p, 0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const PauliOp m = g.member(k);
    ++tally[std::size_t{m.x[qupit]} * p + m.z[qupit]];
  }
  std::size_t distinct = 0;
  std::uint64_t mult = 0;
  bool uniform = true;
  for (auto t : tally) {
    if (t == 0) continue;
    if (distinct++ == 0) mult = t;
    else if (t != mult) uniform = false;
  }
  const std::uint64_t d = g.params().dim;
  FactorDistribution out;
  if (uniform && distinct == p && mult == d / p) {
    out.kind = Purity::Pure;
    out.multiplicity = mult;
    for (std::size_t idx = 1; idx < tally.size(); ++idx) {
      if (tally[idx] == 0) continue;
      Digit x = static_cast<Digit>(idx / p), z = static_cast<Digit>(idx % p);
      const Digit lead = x != 0 ? x : z;
      const Digit inv = inv_mod(lead, p);
      out.local_op = std::make_pair(mul_mod(x, inv, p), mul_mod(z, inv, p));
      break;
    }
    return out;
  }
  if (uniform && distinct == std::size_t{p} * p && mult * p * p == d) {
    out.kind = Purity::Entangled;
    out.multiplicity = mult;
    return out;
  }
  throw FactorTallyViolation("qupit " + std::to_string(qupit + 1) +
                           " has a local factor tally that is neither pure nor totally entangled");
}

/// Partition of qupit indices (0-based internally) into blocks, sorted by
/// smallest member.
struct SeparationPattern {
  std::vector<std::vector<std::uint32_t>> blocks;

  std::vector<std::size_t> block_sizes() const {
    std::vector<std::size_t> s;
    for (const auto& b : blocks) s.push_back(b.size());
    std::sort(s.begin(), s.end());
    return s;
  }

  /// 1-based rendering, e.g. "{1}{2,3}".
  std::string to_string() const {
    std::ostringstream os;
    for (const auto& b : blocks) {
      os << '{';
      for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i] + 1;
      os << '}';
    }
    return os.str();
  }
  friend bool operator==(const SeparationPattern&, const SeparationPattern&) = default;
};

namespace detail {

/// dim(L ∩ coords(S)) for the qupit subset given as a bitmask.
inline std::size_t restricted_dim(const ZpMatrix& gen, std::size_t n, std::uint64_t mask) {
  std::vector<std::size_t> outside;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(mask >> i & 1)) {
      outside.push_back(i);
      outside.push_back(n + i);
    }
  }
  if (outside.empty()) return n;
  return n - rank(select_columns(gen, outside));
}

}  // namespace detail

/// Finest partition of the qupits across which the subspace is a direct sum of
/// its coordinate restrictions.
inline SeparationPattern separation_pattern(const CompatGroup& g) {
  const std::size_t n = g.params().n_qupits;
  if (n > 24) throw InvalidParams("separation search supports at most 24 qupits");
  const ZpMatrix& gen = g.generator_matrix();
  std::vector<std::uint32_t> block_of(n, 0);
  std::vector<std::uint64_t> block_mask(n, 0);
  std::uint64_t rest = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (qupit_factor_distribution(g, i).kind == Purity::Pure) {
      block_mask[i] = std::uint64_t{1} << i;
    } else {
      rest |= std::uint64_t{1} << i;
    }
  }
  // Among the entangled qupits, a subset S of `rest` splits off iff
  // dim(L∩S) + dim(L∩(rest\S)) equals dim(L∩rest).
  if (rest != 0) {
    const std::size_t base = detail::restricted_dim(gen, n, rest);
    std::vector<std::uint64_t> atom(n, rest);
    for (std::uint64_t s = (rest - 1) & rest; s != 0; s = (s - 1) & rest) {
      const std::uint64_t c = rest & ~s;
      if (detail::restricted_dim(gen, n, s) + detail::restricted_dim(gen, n, c) != base) continue;
      for (std::size_t i = 0; i < n; ++i) {
        if (!(rest >> i & 1)) continue;
        atom[i] &= (s >> i & 1) ? s : c;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (rest >> i & 1) block_mask[i] = atom[i];
    }
  }
  SeparationPattern pat;
  std::uint64_t seen = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen >> i & 1) continue;
    std::vector<std::uint32_t> blk;
    for (std::size_t j = 0; j < n; ++j) {
      if (block_mask[i] >> j & 1) blk.push_back(static_cast<std::uint32_t>(j));
    }
    seen |= block_mask[i];
    pat.blocks.push_back(std::move(blk));
  }
  return pat;
}

enum class MubLabel { PI, B, SB, G3, S2B, SG3, BB, G4, C4, P4, OTHER };

inline constexpr std::array<MubLabel, 11> kAllLabels = {MubLabel::PI,  MubLabel::B,   MubLabel::SB, MubLabel::G3,
                                                        MubLabel::S2B, MubLabel::SG3, MubLabel::BB, MubLabel::G4,
                                                        MubLabel::C4,  MubLabel::P4,  MubLabel::OTHER};

inline std::string to_string(MubLabel l) {
  switch (l) {
    case MubLabel::PI: return "PI";
    case MubLabel::B: return "B";
    case MubLabel::SB: return "SB";
    case MubLabel::G3: return "G3";
    case MubLabel::S2B: return "S2B";
    case MubLabel::SG3: return "SG3";
    case MubLabel::BB: return "BB";
    case MubLabel::G4: return "G4";
    case MubLabel::C4: return "C4";
    case MubLabel::P4: return "P4";
    case MubLabel::OTHER: return "OTHER";
  }
  return "OTHER";
}

inline std::optional<MubLabel> label_from_string(std::string_view s) {
  std::string u(s);
  for (auto& c : u) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (MubLabel l : kAllLabels) {
    if (to_string(l) == u) return l;
  }
  if (u == "SSB") return MubLabel::S2B;
  if (u == "G") return MubLabel::G3;
  return std::nullopt;
}

struct MubType {
  MubLabel label = MubLabel::OTHER;
  SeparationPattern pattern;
  NBodyProfile profile;

  /// Which qupits are pure and how the entangled ones group, e.g. "{1}{2,3}".
  std::string variant() const { return pattern.to_string(); }
};

/// Named type from the separation pattern and, for a nonseparable block of
/// four, the 2- and 3-body counts. N >= 5 always yields OTHER.
inline MubType classify_basis(const CompatGroup& g) {
  MubType t;
  t.pattern = separation_pattern(g);
  t.profile = nbody_profile(g);
  const std::size_t n = g.params().n_qupits;
  const std::uint64_t p = g.params().p;
  const auto sizes = t.pattern.block_sizes();
  using V = std::vector<std::size_t>;
  if (n > 4) {
    t.label = MubLabel::OTHER;
  } else if (std::all_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s == 1; })) {
    t.label = MubLabel::PI;
  } else if (n == 2) {
    t.label = MubLabel::B;
  } else if (n == 3) {
    t.label = sizes == V{1, 2} ? MubLabel::SB : MubLabel::G3;
  } else if (sizes == V{1, 1, 2}) {
    t.label = MubLabel::S2B;
  } else if (sizes == V{2, 2}) {
    t.label = MubLabel::BB;
  } else if (sizes == V{1, 3}) {
    t.label = MubLabel::SG3;
  } else {
    const std::uint64_t two = t.profile.at(2), three = t.profile.at(3);
    if (two == 6 * (p - 1)) t.label = MubLabel::G4;
    else if (two == 2 * (p - 1)) t.label = MubLabel::C4;
    else if (two == 0 && three == 4 * (p * p - 1)) t.label = MubLabel::P4;
    else t.label = MubLabel::OTHER;
  }
  return t;
}

namespace detail {

inline PauliOp ops_from_sites(std::initializer_list<std::pair<Digit, Digit>> sites) {
  PauliOp op(sites.size());
  std::size_t i = 0;
  for (auto [x, z] : sites) {
    op.x[i] = x;
    op.z[i] = z;
    ++i;
  }
  return op;
}

}  // namespace detail

/// Letter-form generator set at the given p.
inline std::vector<PauliOp> parse_generators(std::initializer_list<std::string_view> texts, Digit p) {
  const SystemParams params = SystemParams::make(p, texts.begin()->size());
  std::vector<PauliOp> out;
  for (auto t : texts) out.push_back(parse_pauli(t, params));
  return out;
}

/// The four-site "pairwise permutation" set (ZXYW, XZWY, WYXZ, YWZX) with
/// Y = XZ and W = XZ^b, where b is the smallest exponent >= 2 that leaves no
/// 2-body operators in the group. For p = 3 this is b = 2.
inline std::vector<PauliOp> permutation_generators(Digit p) {
  if (p == 2) throw InvalidParams("the 4-site permutation type has no qubit realization");
  const SystemParams params = SystemParams::make(p, 4);
  const std::array<std::string_view, 4> rows = {"ZXYW", "XZWY", "WYXZ", "YWZX"};
  for (Digit b = 2; b < p; ++b) {
    std::vector<PauliOp> gens;
    for (auto r : rows) {
      PauliOp op = parse_pauli(r, params);
      for (std::size_t i = 0; i < 4; ++i) {
        if (std::toupper(static_cast<unsigned char>(r[i])) == 'W') op.z[i] = b;
      }
      gens.push_back(std::move(op));
    }
    try {
      const GeneratorSet gs = validate_generators(gens, params);
      if (nbody_profile(enumerate_group(gs)).at(2) == 0) return gs.gens;
    } catch (const Error&) {
    }
  }
  throw InvalidParams("no permutation-type generator set found for p = " + std::to_string(p));
}

/// Representative generator set for each named type. `n` is only consulted for
/// PI; every other label fixes its own number of qupits.
inline std::vector<PauliOp> reference_generators(MubLabel label, Digit p, std::size_t n = 0) {
  using detail::ops_from_sites;
  const Digit m = p - 1;  // exponent of Z^{-1}
  const std::pair<Digit, Digit> I{0, 0}, X{1, 0}, Z{0, 1}, Zi{0, m}, Y{1, 1};
  switch (label) {
    case MubLabel::PI: {
      std::vector<PauliOp> out;
      for (std::size_t i = 0; i < n; ++i) {
        PauliOp op(n);
        op.z[i] = 1;
        out.push_back(op);
      }
      return out;
    }
    case MubLabel::B: return {ops_from_sites({X, X}), ops_from_sites({Z, Zi})};
    case MubLabel::SB: return {ops_from_sites({Z, I, I}), ops_from_sites({I, X, X}), ops_from_sites({I, Z, Zi})};
    case MubLabel::G3: return parse_generators({"XXY", "XYX", "YXX"}, p);
    case MubLabel::S2B:
      return {ops_from_sites({Z, I, I, I}), ops_from_sites({I, Z, I, I}), ops_from_sites({I, I, X, X}),
              ops_from_sites({I, I, Z, Zi})};
    case MubLabel::SG3:
      return {ops_from_sites({Z, I, I, I}), ops_from_sites({I, X, X, Y}), ops_from_sites({I, X, Y, X}),
              ops_from_sites({I, Y, X, X})};
    case MubLabel::BB:
      return {ops_from_sites({X, X, I, I}), ops_from_sites({Z, Zi, I, I}), ops_from_sites({I, I, X, X}),
              ops_from_sites({I, I, Z, Zi})};
    case MubLabel::G4: return parse_generators({"XXXY", "XXYX", "XYXX", "YXXX"}, p);
    case MubLabel::C4: return parse_generators({"XZXI", "ZXIX", "XIXZ", "IXZX"}, p);
    case MubLabel::P4: return permutation_generators(p);
    case MubLabel::OTHER: break;
  }
  throw InvalidParams("no reference generators for label " + to_string(label));
}

}  // namespace mubkit
