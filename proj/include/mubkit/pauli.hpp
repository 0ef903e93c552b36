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

#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mubkit/zp.hpp"

namespace mubkit {

/// Phase-free Pauli operator X^x Z^z on N qupits, stored as exponent vectors.
struct PauliOp {
  std::vector<Digit> x;
  std::vector<Digit> z;

  PauliOp() = default;
  explicit PauliOp(std::size_t n) : x(n, 0), z(n, 0) {}
  PauliOp(std::vector<Digit> xs, std::vector<Digit> zs) : x(std::move(xs)), z(std::move(zs)) {}

  std::size_t size() const { return x.size(); }

  bool is_identity() const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] != 0 || z[i] != 0) return false;
    }
    return true;
  }

  friend bool operator==(const PauliOp&, const PauliOp&) = default;
  friend auto operator<=>(const PauliOp&, const PauliOp&) = default;
};

/// x_a . z_b - z_a . x_b mod p. Zero iff the operators commute as matrices.
inline Digit symplectic_form(const PauliOp& a, const PauliOp& b, Digit p) {
  std::uint64_t plus = 0, minus = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    plus += std::uint64_t{a.x[i]} * b.z[i];
    minus += std::uint64_t{a.z[i]} * b.x[i];
  }
  return sub_mod(static_cast<Digit>(plus % p), static_cast<Digit>(minus % p), p);
}

/// Exponent-wise sum; the scalar phase of the matrix product is dropped.
inline PauliOp compose(const PauliOp& a, const PauliOp& b, Digit p) {
  PauliOp r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    r.x[i] = add_mod(a.x[i], b.x[i], p);
    r.z[i] = add_mod(a.z[i], b.z[i], p);
  }
  return r;
}

inline PauliOp power(const PauliOp& a, Digit k, Digit p) {
  PauliOp r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    r.x[i] = mul_mod(a.x[i], k, p);
    r.z[i] = mul_mod(a.z[i], k, p);
  }
  return r;
}

/// Number of sites carrying a non-identity factor.
inline std::size_t body_count(const PauliOp& a) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.x[i] != 0 || a.z[i] != 0) ++n;
  }
  return n;
}

/// Integer code of a symplectic vector: x digits then z digits, base p, site 0
/// least significant. Bijective on Z_p^(2N).
inline std::uint64_t encode(const PauliOp& a, Digit p) {
  std::uint64_t code = 0;
  for (std::size_t i = a.size(); i-- > 0;) code = code * p + a.z[i];
  for (std::size_t i = a.size(); i-- > 0;) code = code * p + a.x[i];
  return code;
}

inline PauliOp decode(std::uint64_t code, std::size_t n, Digit p) {
  PauliOp a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a.x[i] = static_cast<Digit>(code % p);
    code /= p;
  }
  for (std::size_t i = 0; i < n; ++i) {
    a.z[i] = static_cast<Digit>(code % p);
    code /= p;
  }
  return a;
}

/// Concatenated (x|z) coordinates.
inline std::vector<Digit> symplectic_vector(const PauliOp& a) {
  std::vector<Digit> v(a.x);
  v.insert(v.end(), a.z.begin(), a.z.end());
  return v;
}

inline PauliOp from_symplectic_vector(std::span<const Digit> v) {
  const std::size_t n = v.size() / 2;
  return PauliOp(std::vector<Digit>(v.begin(), v.begin() + n), std::vector<Digit>(v.begin() + n, v.end()));
}

namespace detail {

inline bool letter_for(Digit x, Digit z, Digit p, char& out) {
  if (x == 0 && z == 0) out = 'I';
  else if (x == 1 && z == 0) out = 'X';
  else if (x == 0 && z == 1) out = 'Z';
  else if (x == 1 && z == 1) out = 'Y';
  else if (x == 1 && z == 2 && p > 2) out = 'W';
  else return false;
  return true;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Letter form (I,X,Z,Y=XZ,W=XZ^2) when every site has a letter, else the
/// exponent-pair form "x z,x z,...".
inline std::string to_string(const PauliOp& a, Digit p) {
  std::string letters;
  bool ok = true;
  for (std::size_t i = 0; i < a.size() && ok; ++i) {
    char c;
    ok = detail::letter_for(a.x[i], a.z[i], p, c);
    letters.push_back(c);
  }
  if (ok) return letters;
  std::ostringstream os;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) os << ',';
    os << a.x[i] << ' ' << a.z[i];
  }
  return os.str();
}

/// Parses either N letters from {I,X,Z,Y,W} (case-insensitive, W only for odd p)
/// or N comma-separated "x z" exponent pairs.
inline PauliOp parse_pauli(std::string_view text, const SystemParams& params) {
  const std::string_view t = detail::trim(text);
  const std::size_t n = params.n_qupits;
  const Digit p = params.p;
  const bool letter_form =
      !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); });
  PauliOp op(n);
  if (letter_form) {
    if (t.size() != n) {
      throw ParseError("operator '" + std::string(t) + "' has " + std::to_string(t.size()) +
                       " sites, expected " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
      switch (std::toupper(static_cast<unsigned char>(t[i]))) {
        case 'I': break;
        case 'X': op.x[i] = 1; break;
        case 'Z': op.z[i] = 1; break;
        case 'Y': op.x[i] = 1; op.z[i] = 1 % p; break;
        case 'W':
          if (p == 2) throw ParseError("W = XZ^2 is not defined for qubits");
          op.x[i] = 1;
          op.z[i] = 2;
          break;
        default: throw ParseError(std::string("unknown operator letter '") + t[i] + "'");
      }
    }
    return op;
  }

  std::vector<std::string_view> sites;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = t.find(',', start);
    sites.push_back(t.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (sites.size() != n) {
    throw ParseError("expected " + std::to_string(n) + " exponent pairs, got " + std::to_string(sites.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::istringstream is{std::string(sites[i])};
    long long xe = -1, ze = -1;
    std::string rest;
    if (!(is >> xe >> ze) || (is >> rest)) {
      throw ParseError("malformed exponent pair '" + std::string(detail::trim(sites[i])) + "'");
    }
    if (xe < 0 || ze < 0 || xe >= p || ze >= p) {
      throw ParseError("exponent out of range [0," + std::to_string(p) + ")");
    }
    op.x[i] = static_cast<Digit>(xe);
    op.z[i] = static_cast<Digit>(ze);
  }
  return op;
}

}  // namespace mubkit
