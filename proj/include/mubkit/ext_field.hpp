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

#include <cstdint>
#include <vector>

#include "mubkit/zp.hpp"

namespace mubkit {

namespace poly {

// Polynomials over Z_p as coefficient vectors, lowest degree first.
using Poly = std::vector<Digit>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Remainder of a modulo a monic-or-not nonzero b.
inline Poly remainder(Poly a, const Poly& b, Digit p) {
  trim(a);
  Poly d = b;
  trim(d);
  if (d.empty()) throw InvalidParams("polynomial division by zero");
  const Digit lead_inv = inv_mod(d.back(), p);
  while (a.size() >= d.size()) {
    const Digit f = mul_mod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - d.size();
    for (std::size_t i = 0; i < d.size(); ++i) {
      a[shift + i] = sub_mod(a[shift + i], mul_mod(f, d[i], p), p);
    }
    trim(a);
  }
  return a;
}

/// Monic polynomial of the given degree whose lower coefficients are the base-p
/// digits of index (constant term least significant).
inline Poly monic_from_index(std::uint64_t index, unsigned degree, Digit p) {
  Poly f(degree + 1, 0);
  for (unsigned i = 0; i < degree; ++i) {
    f[i] = static_cast<Digit>(index % p);
    index /= p;
  }
  f[degree] = 1;
  return f;
}

/// Irreducibility by exhaustive trial division with every monic polynomial of
/// degree 1..deg/2.
inline bool is_irreducible(const Poly& f, Digit p) {
  Poly g = f;
  trim(g);
  if (g.size() < 2) return false;
  const unsigned deg = static_cast<unsigned>(g.size() - 1);
  for (unsigned k = 1; 2 * k <= deg; ++k) {
    const std::uint64_t count = checked_pow(p, k);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      if (remainder(g, monic_from_index(idx, k, p), p).empty()) return false;
    }
  }
  return true;
}

}  // namespace poly

/// GF(p^N) in the polynomial basis {1, a, ..., a^(N-1)} over a fixed monic
/// irreducible modulus.
class ExtField {
 public:
  using Element = std::vector<Digit>;

  ExtField(Digit p, unsigned degree, poly::Poly modulus)
      : p_(p), degree_(degree), modulus_(std::move(modulus)), size_(checked_pow(p, degree)) {}

  Digit characteristic() const { return p_; }
  unsigned degree() const { return degree_; }
  const poly::Poly& modulus() const { return modulus_; }
  std::uint64_t size() const { return size_; }

  Element zero() const { return Element(degree_, 0); }
  Element one() const {
    Element e = zero();
    e[0] = 1;
    return e;
  }

  /// Element whose coefficients are the base-p digits of index.
  Element from_index(std::uint64_t index) const {
    Element e(degree_);
    for (unsigned i = 0; i < degree_; ++i) {
      e[i] = static_cast<Digit>(index % p_);
      index /= p_;
    }
    return e;
  }

  std::uint64_t to_index(const Element& a) const {
    std::uint64_t idx = 0;
    for (unsigned i = degree_; i-- > 0;) idx = idx * p_ + a[i];
    return idx;
  }

  /// The basis element a^k for k < degree.
  Element basis(unsigned k) const {
    Element e = zero();
    e[k] = 1;
    return e;
  }

  Element add(const Element& a, const Element& b) const {
    Element r(degree_);
    for (unsigned i = 0; i < degree_; ++i) r[i] = add_mod(a[i], b[i], p_);
    return r;
  }

  Element sub(const Element& a, const Element& b) const {
    Element r(degree_);
    for (unsigned i = 0; i < degree_; ++i) r[i] = sub_mod(a[i], b[i], p_);
    return r;
  }

  Element mul(const Element& a, const Element& b) const {
    poly::Poly prod(2 * degree_ - 1, 0);
    for (unsigned i = 0; i < degree_; ++i) {
      if (a[i] == 0) continue;
      for (unsigned j = 0; j < degree_; ++j) {
        prod[i + j] = add_mod(prod[i + j], mul_mod(a[i], b[j], p_), p_);
      }
    }
    poly::Poly r = poly::remainder(std::move(prod), modulus_, p_);
    r.resize(degree_, 0);
    return r;
  }

  Element pow(Element a, std::uint64_t e) const {
    Element r = one();
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  Element frobenius(const Element& a) const { return pow(a, p_); }

  /// Inverse of a nonzero element, as a^(q-2).
  Element inverse(const Element& a) const {
    if (to_index(a) == 0) throw InvalidParams("zero has no inverse");
    return pow(a, size_ - 2);
  }

  /// Absolute trace a + a^p + ... + a^(p^(N-1)), an element of the prime field.
  Digit trace(const Element& a) const {
    Element sum = zero();
    Element term = a;
    for (unsigned k = 0; k < degree_; ++k) {
      sum = add(sum, term);
      term = frobenius(term);
    }
    for (unsigned i = 1; i < degree_; ++i) {
      if (sum[i] != 0) throw InvalidParams("trace left the prime field; modulus is not irreducible");
    }
    return sum[0];
  }

 private:
  Digit p_;
  unsigned degree_;
  poly::Poly modulus_;
  std::uint64_t size_;
};

/// GF(p^degree) with the first monic irreducible modulus in the scan that reads
/// the lower coefficients as a base-p numeral, constant term least significant.
inline ExtField field_make(std::uint64_t p, unsigned degree) {
  if (!is_prime(p)) throw InvalidParams(std::to_string(p) + " is not prime");
  if (degree < 1) throw InvalidParams("field degree must be at least 1");
  const Digit q = static_cast<Digit>(p);
  const std::uint64_t count = checked_pow(p, degree);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    poly::Poly f = poly::monic_from_index(idx, degree, q);
    if (poly::is_irreducible(f, q)) return ExtField(q, degree, std::move(f));
  }
  throw InvalidParams("no irreducible polynomial found");  // unreachable for prime p
}

}  // namespace mubkit
