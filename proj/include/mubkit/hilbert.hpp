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

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "mubkit/compat_group.hpp"

namespace mubkit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Order of the root of unity used for exact phases: i for qubits (so that the
/// phased Y is Hermitian), omega itself for odd p.
inline std::uint32_t phase_order(Digit p) { return p == 2 ? 4u : p; }

/// Exact monomial matrix: M e_j = u^phase[j] e_target[j], u = exp(2 pi i / r).
struct Monomial {
  std::uint32_t r = 1;
  std::vector<std::uint32_t> target;
  std::vector<std::uint32_t> phase;

  static Monomial identity(std::uint64_t d, std::uint32_t r) {
    Monomial m;
    m.r = r;
    m.target.resize(d);
    m.phase.assign(d, 0);
    for (std::uint64_t j = 0; j < d; ++j) m.target[j] = static_cast<std::uint32_t>(j);
    return m;
  }

  bool is_diagonal() const {
    for (std::size_t j = 0; j < target.size(); ++j) {
      if (target[j] != j) return false;
    }
    return true;
  }
};

/// (a * b) e_j = a(b e_j).
inline Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial c;
  c.r = a.r;
  const std::size_t d = b.target.size();
  c.target.resize(d);
  c.phase.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    const std::uint32_t t = b.target[j];
    c.target[j] = a.target[t];
    c.phase[j] = (b.phase[j] + a.phase[t]) % a.r;
  }
  return c;
}

inline std::vector<Complex> roots_of_unity(std::uint32_t r) {
  std::vector<Complex> u(r);
  for (std::uint32_t k = 0; k < r; ++k) u[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / r);
  return u;
}

/// Tensor product of site factors X^x Z^z with qupit 0 as the most significant
/// digit of the state index. When phased and p = 2, each site picks up i^(x z).
inline Monomial operator_monomial(const PauliOp& op, const SystemParams& params, bool phased) {
  const Digit p = params.p;
  const std::size_t n = params.n_qupits;
  const std::uint32_t r = phase_order(p);
  const std::uint32_t step = r / p;
  std::uint32_t site_phase = 0;
  if (phased && p == 2) {
    for (std::size_t i = 0; i < n; ++i) site_phase += op.x[i] * op.z[i];
  }
  Monomial m;
  m.r = r;
  m.target.resize(params.dim);
  m.phase.resize(params.dim);
  std::vector<Digit> k(n, 0);
  for (std::uint64_t j = 0; j < params.dim; ++j) {
    std::uint64_t tgt = 0;
    std::uint64_t ph = site_phase;
    for (std::size_t i = 0; i < n; ++i) {
      tgt = tgt * p + add_mod(k[i], op.x[i], p);
      ph += std::uint64_t{step} * op.z[i] * k[i];
    }
    m.target[j] = static_cast<std::uint32_t>(tgt);
    m.phase[j] = static_cast<std::uint32_t>(ph % r);
    for (std::size_t i = n; i-- > 0;) {
      if (++k[i] < p) break;
      k[i] = 0;
    }
  }
  return m;
}

inline ComplexMatrix to_dense(const Monomial& m) {
  const auto u = roots_of_unity(m.r);
  const Eigen::Index d = static_cast<Eigen::Index>(m.target.size());
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) out(m.target[j], j) = u[m.phase[j]];
  return out;
}

inline ComplexMatrix operator_matrix(const PauliOp& op, const SystemParams& params, bool phased) {
  return to_dense(operator_monomial(op, params, phased));
}

/// All p^N products of the phased generators, indexed by the exponent vector n
/// with n_i = (index / p^i) mod p.
class GroupRepresentation {
 public:
  explicit GroupRepresentation(const GeneratorSet& gs) : params_(gs.params), r_(phase_order(gs.params.p)) {
    const Digit p = params_.p;
    const std::size_t n = params_.n_qupits;
    std::vector<Monomial> gens;
    for (const auto& g : gs.gens) gens.push_back(operator_monomial(g, params_, true));
    elements_.reserve(params_.dim);
    elements_.push_back(Monomial::identity(params_.dim, r_));
    for (std::uint64_t idx = 1; idx < params_.dim; ++idx) {
      std::uint64_t rem = idx, weight = 1;
      std::size_t i = 0;
      while (rem % p == 0) {
        rem /= p;
        weight *= p;
        ++i;
      }
      elements_.push_back(multiply(gens[i], elements_[idx - weight]));
    }
    for (std::uint64_t idx = 0; idx < params_.dim; ++idx) {
      if (elements_[idx].is_diagonal()) diagonal_.push_back(idx);
    }
    (void)n;
  }

  const SystemParams& params() const { return params_; }
  const Monomial& element(std::uint64_t n_index) const { return elements_[n_index]; }

  /// Exponent of u in omega^(-n.k), where k_i is digit i of the label counted
  /// from the most significant end.
  std::uint32_t label_phase(std::uint64_t n_index, std::uint64_t k_label) const {
    const Digit p = params_.p;
    const std::size_t n = params_.n_qupits;
    std::uint64_t dot = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t ni = n_index % p;
      n_index /= p;
      const std::uint64_t ki = (k_label / checked_pow(p, n - 1 - i)) % p;
      dot += ni * ki;
    }
    const std::uint32_t step = r_ / p;
    return static_cast<std::uint32_t>((r_ - (step * (dot % p)) % r_) % r_);
  }

  ComplexMatrix projector(std::uint64_t k_label) const {
    const auto u = roots_of_unity(r_);
    const Eigen::Index d = static_cast<Eigen::Index>(params_.dim);
    ComplexMatrix P = ComplexMatrix::Zero(d, d);
    for (std::uint64_t idx = 0; idx < params_.dim; ++idx) {
      const Monomial& m = elements_[idx];
      const std::uint32_t lp = label_phase(idx, k_label);
      for (Eigen::Index j = 0; j < d; ++j) P(m.target[j], j) += u[(m.phase[j] + lp) % r_];
    }
    return P / static_cast<double>(params_.dim);
  }

  /// Column of the projector with the largest diagonal entry, normalized, with
  /// its largest-magnitude entry made real positive (ties: lowest index).
  StateVector eigenvector(std::uint64_t k_label) const {
    const auto u = roots_of_unity(r_);
    const std::uint64_t d = params_.dim;
    const double scale = 1.0 / static_cast<double>(d);
    std::vector<double> diag(d, 0.0);
    for (std::uint64_t idx : diagonal_) {
      const Monomial& m = elements_[idx];
      const std::uint32_t lp = label_phase(idx, k_label);
      for (std::uint64_t j = 0; j < d; ++j) diag[j] += u[(m.phase[j] + lp) % r_].real() * scale;
    }
    std::uint64_t best = 0;
    for (std::uint64_t j = 1; j < d; ++j) {
      if (diag[j] > diag[best] + 1e-12) best = j;
    }
    StateVector v = StateVector::Zero(static_cast<Eigen::Index>(d));
    for (std::uint64_t idx = 0; idx < d; ++idx) {
      const Monomial& m = elements_[idx];
      v(m.target[best]) += u[(m.phase[best] + label_phase(idx, k_label)) % r_] * scale;
    }
    v /= v.norm();
    Eigen::Index lead = 0;
    double lead_mag = -1.0;
    for (Eigen::Index j = 0; j < v.size(); ++j) {
      const double mag = std::abs(v(j));
      if (mag > lead_mag + 1e-12) {
        lead_mag = mag;
        lead = j;
      }
    }
    v *= std::conj(v(lead)) / std::abs(v(lead));
    return v;
  }

 private:
  SystemParams params_;
  std::uint32_t r_;
  std::vector<Monomial> elements_;
  std::vector<std::uint64_t> diagonal_;
};

/// Joint eigenbasis of a generator set: column k is the state with eigenvalue
/// omega^(k_i) under generator i.
struct MubBasis {
  SystemParams params;
  CompatGroup source;
  GeneratorSet generators;
  ComplexMatrix vectors;
};

/// Largest deviation of each projector from a trace-one idempotent Hermitian
/// matrix, plus the deviation of their sum from the identity.
struct ProjectorReport {
  double max_idempotence = 0.0;
  double max_trace = 0.0;
  double max_hermitian = 0.0;
  double completeness = 0.0;
};

inline double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline ProjectorReport check_projectors(const GroupRepresentation& rep) {
  ProjectorReport rpt;
  const Eigen::Index d = static_cast<Eigen::Index>(rep.params().dim);
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (std::uint64_t k = 0; k < rep.params().dim; ++k) {
    const ComplexMatrix P = rep.projector(k);
    rpt.max_idempotence = std::max(rpt.max_idempotence, max_abs(P * P - P));
    rpt.max_trace = std::max(rpt.max_trace, std::abs(P.trace() - Complex(1.0, 0.0)));
    rpt.max_hermitian = std::max(rpt.max_hermitian, max_abs(P - P.adjoint()));
    sum += P;
  }
  rpt.completeness = max_abs(sum - ComplexMatrix::Identity(d, d));
  return rpt;
}

inline constexpr double kHilbertTolerance = 1e-9;

/// Builds the basis; with verify_projectors set, every projector is checked to
/// be a trace-one idempotent (ProjectorNotRankOne otherwise).
inline MubBasis eigenbasis(const GeneratorSet& gs, bool verify_projectors = true) {
  const GroupRepresentation rep(gs);
  if (verify_projectors) {
    const ProjectorReport r = check_projectors(rep);
    if (r.max_idempotence > kHilbertTolerance || r.max_trace > kHilbertTolerance) {
      throw ProjectorNotRankOne("projector deviates from a rank-one projector");
    }
  }
  MubBasis b;
  b.params = gs.params;
  b.source = enumerate_group(gs);
  b.generators = gs;
  const Eigen::Index d = static_cast<Eigen::Index>(gs.params.dim);
  b.vectors.resize(d, d);
  for (Eigen::Index k = 0; k < d; ++k) b.vectors.col(k) = rep.eigenvector(static_cast<std::uint64_t>(k));
  return b;
}

/// Largest |G_i v_k - omega^(k_i) v_k| over generators and columns.
inline double eigen_equation_deviation(const MubBasis& b) {
  const Digit p = b.params.p;
  const std::size_t n = b.params.n_qupits;
  const auto u = roots_of_unity(phase_order(p));
  const auto w = roots_of_unity(p);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Monomial g = operator_monomial(b.generators.gens[i], b.params, true);
    for (Eigen::Index k = 0; k < b.vectors.cols(); ++k) {
      const std::uint64_t ki = (static_cast<std::uint64_t>(k) / checked_pow(p, n - 1 - i)) % p;
      StateVector gv = StateVector::Zero(b.vectors.rows());
      for (Eigen::Index j = 0; j < b.vectors.rows(); ++j) gv(g.target[j]) += u[g.phase[j]] * b.vectors(j, k);
      worst = std::max(worst, (gv - w[ki] * b.vectors.col(k)).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

struct ReducedState {
  std::size_t qupit = 0;
  ComplexMatrix rho;
};

/// Partial trace over every qupit except `qupit`.
inline ReducedState reduced_density(const StateVector& state, std::size_t qupit, const SystemParams& params) {
  const Digit p = params.p;
  const std::uint64_t low = checked_pow(p, params.n_qupits - 1 - qupit);
  const std::uint64_t high = params.dim / (low * p);
  ReducedState r;
  r.qupit = qupit;
  r.rho = ComplexMatrix::Zero(p, p);
  for (std::uint64_t h = 0; h < high; ++h) {
    for (std::uint64_t l = 0; l < low; ++l) {
      const std::uint64_t base = h * low * p + l;
      for (Digit a = 0; a < p; ++a) {
        const Complex va = state(static_cast<Eigen::Index>(base + a * low));
        if (va == Complex(0.0, 0.0)) continue;
        for (Digit c = 0; c < p; ++c) {
          r.rho(a, c) += va * std::conj(state(static_cast<Eigen::Index>(base + c * low)));
        }
      }
    }
  }
  return r;
}

/// (p Tr rho^2 - 1) / (p - 1): 1 for a pure qupit, 0 for a maximally mixed one.
inline double purity(const ReducedState& r) {
  const double p = static_cast<double>(r.rho.rows());
  const double tr_sq = r.rho.cwiseAbs2().sum();
  return (p * tr_sq - 1.0) / (p - 1.0);
}

/// max over column pairs of | |<a_j|b_k>|^2 - 1/d |.
inline double mub_check(const MubBasis& a, const MubBasis& b) {
  if (a.source == b.source) throw SameGroup();
  const ComplexMatrix overlaps = a.vectors.adjoint() * b.vectors;
  const double inv_d = 1.0 / static_cast<double>(a.params.dim);
  return (overlaps.cwiseAbs2().array() - inv_d).abs().maxCoeff();
}

}  // namespace mubkit
