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

// Independent reference computations for the test suite. Nothing here calls
// into the library beyond plain data types.

#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "mubkit/pauli.hpp"

namespace oracle {

using mubkit::Digit;
using mubkit::PauliOp;
using Mat = Eigen::MatrixXcd;

inline std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

/// Every vector in the Z_p span of `rows`, as sorted digit vectors.
inline std::set<std::vector<Digit>> span(const std::vector<std::vector<Digit>>& rows, Digit p) {
  std::set<std::vector<Digit>> out;
  if (rows.empty()) return out;
  const std::size_t w = rows.front().size();
  const std::uint64_t combos = ipow(p, rows.size());
  for (std::uint64_t c = 0; c < combos; ++c) {
    std::vector<Digit> v(w, 0);
    std::uint64_t rem = c;
    for (const auto& r : rows) {
      const Digit k = static_cast<Digit>(rem % p);
      rem /= p;
      for (std::size_t i = 0; i < w; ++i) v[i] = static_cast<Digit>((v[i] + std::uint64_t{k} * r[i]) % p);
    }
    out.insert(v);
  }
  return out;
}

/// log_p of the span size.
inline std::size_t rank_by_span(const std::vector<std::vector<Digit>>& rows, Digit p) {
  std::size_t size = span(rows, p).size(), r = 0;
  while (size > 1) {
    size /= p;
    ++r;
  }
  return r;
}

/// Dense X^x Z^z on one site, with X|j> = |j+1>, Z|j> = w^j |j>.
inline Mat site_matrix(Digit x, Digit z, Digit p) {
  const double pi = std::acos(-1.0);
  Mat X = Mat::Zero(p, p), Z = Mat::Zero(p, p);
  for (Digit j = 0; j < p; ++j) {
    X((j + 1) % p, j) = 1.0;
    Z(j, j) = std::polar(1.0, 2 * pi * j / p);
  }
  Mat out = Mat::Identity(p, p);
  for (Digit k = 0; k < x; ++k) out = X * out;
  Mat zp = Mat::Identity(p, p);
  for (Digit k = 0; k < z; ++k) zp = Z * zp;
  return out * zp;
}

/// Site 0 is the leftmost tensor factor.
inline Mat pauli_matrix(const PauliOp& op, Digit p) {
  Mat out = Mat::Identity(1, 1);
  for (std::size_t i = 0; i < op.size(); ++i) {
    const Mat s = site_matrix(op.x[i], op.z[i], p);
    Mat k(out.rows() * s.rows(), out.cols() * s.cols());
    for (Eigen::Index a = 0; a < out.rows(); ++a) {
      for (Eigen::Index b = 0; b < out.cols(); ++b) k.block(a * s.rows(), b * s.cols(), s.rows(), s.cols()) = out(a, b) * s;
    }
    out = k;
  }
  return out;
}

/// Histogram of support sizes over the nonidentity members of a span.
inline std::vector<std::uint64_t> body_histogram(const std::set<std::vector<Digit>>& members, std::size_t n) {
  std::vector<std::uint64_t> h(n, 0);
  for (const auto& v : members) {
    std::size_t b = 0;
    for (std::size_t i = 0; i < n; ++i) b += (v[i] != 0 || v[n + i] != 0);
    if (b) ++h[b - 1];
  }
  return h;
}

inline std::vector<std::vector<Digit>> rows_of(const std::vector<PauliOp>& ops) {
  std::vector<std::vector<Digit>> out;
  for (const auto& o : ops) {
    std::vector<Digit> v = o.x;
    v.insert(v.end(), o.z.begin(), o.z.end());
    out.push_back(v);
  }
  return out;
}

/// Every nonnegative vector with entries <= bound solving A x = b, by full
/// grid scan.
inline std::vector<std::vector<std::int64_t>> grid_solutions(const std::vector<std::vector<std::int64_t>>& a,
                                                             const std::vector<std::int64_t>& b, std::int64_t bound) {
  const std::size_t nv = a.front().size();
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> x(nv, 0);
  while (true) {
    bool ok = true;
    for (std::size_t e = 0; e < a.size() && ok; ++e) {
      std::int64_t s = 0;
      for (std::size_t v = 0; v < nv; ++v) s += a[e][v] * x[v];
      ok = s == b[e];
    }
    if (ok) out.push_back(x);
    std::size_t k = nv;
    while (k-- > 0) {
      if (++x[k] <= bound) break;
      x[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

}  // namespace oracle
