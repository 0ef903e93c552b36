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
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "mubkit/errors.hpp"

namespace mubkit {

using Digit = std::uint32_t;

/// Deterministic trial-division primality test.
constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

/// base^exp, throwing InvalidParams on 64-bit overflow.
inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) {
      throw InvalidParams("integer power overflows 64 bits");
    }
    r *= base;
  }
  return r;
}

inline Digit add_mod(Digit a, Digit b, Digit p) { return static_cast<Digit>((std::uint64_t{a} + b) % p); }
inline Digit sub_mod(Digit a, Digit b, Digit p) { return static_cast<Digit>((std::uint64_t{a} + p - b) % p); }
inline Digit mul_mod(Digit a, Digit b, Digit p) { return static_cast<Digit>((std::uint64_t{a} * b) % p); }
inline Digit neg_mod(Digit a, Digit p) { return a == 0 ? 0 : p - a; }

/// Multiplicative inverse of a nonzero residue modulo a prime p.
inline Digit inv_mod(Digit a, Digit p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw InvalidParams("residue has no inverse");
  if (t < 0) t += p;
  return static_cast<Digit>(t);
}

/// The (p, N, d = p^N) triple describing N qupits of p levels each.
struct SystemParams {
  Digit p = 2;
  std::uint32_t n_qupits = 1;
  std::uint64_t dim = 2;

  static SystemParams make(std::uint64_t p, std::uint64_t n) {
    if (!is_prime(p)) throw InvalidParams(std::to_string(p) + " is not prime");
    if (p > (1u << 15)) throw InvalidParams("p too large");
    if (n < 1) throw InvalidParams("need at least one qupit");
    SystemParams s;
    s.p = static_cast<Digit>(p);
    s.n_qupits = static_cast<std::uint32_t>(n);
    s.dim = checked_pow(p, n);
    return s;
  }

  /// Number of symplectic vectors, p^(2N).
  std::uint64_t phase_space_size() const { return dim * dim; }

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

/// Dense matrix over Z_p, row-major.
class ZpMatrix {
 public:
  ZpMatrix() = default;
  ZpMatrix(Digit p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  ZpMatrix(Digit p, std::size_t rows, std::size_t cols, std::vector<Digit> entries)
      : p_(p), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) throw InvalidParams("matrix entry count mismatch");
    for (auto& e : data_) e %= p_;
  }

  Digit modulus() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Digit& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Digit at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Digit> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Digit> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  const std::vector<Digit>& entries() const { return data_; }

  static ZpMatrix identity(Digit p, std::size_t n) {
    ZpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  friend bool operator==(const ZpMatrix&, const ZpMatrix&) = default;
  friend auto operator<=>(const ZpMatrix& a, const ZpMatrix& b) { return a.data_ <=> b.data_; }

 private:
  Digit p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Digit> data_;
};

/// Reduced row echelon form over Z_p. Zero rows are kept at the bottom so the
/// shape is unchanged.
inline ZpMatrix rref(ZpMatrix m) {
  const Digit p = m.modulus();
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t pivot = lead;
    while (pivot < m.rows() && m.at(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != lead) {
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m.at(pivot, k), m.at(lead, k));
    }
    const Digit inv = inv_mod(m.at(lead, c), p);
    for (std::size_t k = 0; k < m.cols(); ++k) m.at(lead, k) = mul_mod(m.at(lead, k), inv, p);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead || m.at(r, c) == 0) continue;
      const Digit f = m.at(r, c);
      for (std::size_t k = 0; k < m.cols(); ++k) {
        m.at(r, k) = sub_mod(m.at(r, k), mul_mod(f, m.at(lead, k), p), p);
      }
    }
    ++lead;
  }
  return m;
}

inline std::size_t rank(const ZpMatrix& m) {
  const ZpMatrix r = rref(m);
  std::size_t k = 0;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    const auto row = r.row(i);
    if (std::any_of(row.begin(), row.end(), [](Digit d) { return d != 0; })) ++k;
  }
  return k;
}

/// Column subset of m, in the order given.
inline ZpMatrix select_columns(const ZpMatrix& m, std::span<const std::size_t> cols) {
  ZpMatrix out(m.modulus(), m.rows(), cols.size());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t k = 0; k < cols.size(); ++k) out.at(r, k) = m.at(r, cols[k]);
  }
  return out;
}

}  // namespace mubkit
