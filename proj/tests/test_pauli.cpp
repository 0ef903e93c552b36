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

#include <random>

#include <gtest/gtest.h>

#include "mubkit/pauli.hpp"
#include "oracles.hpp"

namespace {

using namespace mubkit;

bool proportional(const oracle::Mat& a, const oracle::Mat& b) {
  // a = c b with |c| = 1 for monomial matrices with the same support
  Eigen::Index r = 0;
  while (std::abs(b(r, 0)) < 0.5) ++r;
  const auto c = a(r, 0) / b(r, 0);
  return (a - c * b).cwiseAbs().maxCoeff() < 1e-9 && std::abs(std::abs(c) - 1.0) < 1e-9;
}

TEST(Symplectic, FormMatchesMatrixCommutation) {
  for (auto [p, n] : std::vector<std::pair<Digit, std::size_t>>{{2, 1}, {2, 2}, {3, 1}, {3, 2}, {2, 3}}) {
    const auto params = SystemParams::make(p, n);
    std::vector<oracle::Mat> mats;
    for (std::uint64_t c = 0; c < params.phase_space_size(); ++c) mats.push_back(oracle::pauli_matrix(decode(c, n, p), p));
    for (std::uint64_t a = 0; a < mats.size(); ++a) {
      for (std::uint64_t b = 0; b < mats.size(); ++b) {
        const bool commute = (mats[a] * mats[b] - mats[b] * mats[a]).cwiseAbs().maxCoeff() < 1e-9;
        EXPECT_EQ(commute, symplectic_form(decode(a, n, p), decode(b, n, p), p) == 0);
      }
    }
  }
}

TEST(Symplectic, FormIsAlternatingAndBilinear) {
  std::mt19937 rng(3);
  for (Digit p : {2u, 3u, 5u, 7u}) {
    const auto params = SystemParams::make(p, 3);
    std::uniform_int_distribution<std::uint64_t> pick(0, params.phase_space_size() - 1);
    for (int t = 0; t < 200; ++t) {
      const auto a = decode(pick(rng), 3, p), b = decode(pick(rng), 3, p), c = decode(pick(rng), 3, p);
      EXPECT_EQ(symplectic_form(a, a, p), 0u);
      EXPECT_EQ(add_mod(symplectic_form(a, b, p), symplectic_form(b, a, p), p), 0u);
      EXPECT_EQ(symplectic_form(compose(a, b, p), c, p),
                add_mod(symplectic_form(a, c, p), symplectic_form(b, c, p), p));
    }
  }
}

TEST(Compose, MatchesMatrixProductUpToPhase) {
  std::mt19937 rng(5);
  for (Digit p : {2u, 3u, 5u}) {
    const auto params = SystemParams::make(p, 2);
    std::uniform_int_distribution<std::uint64_t> pick(0, params.phase_space_size() - 1);
    for (int t = 0; t < 50; ++t) {
      const auto a = decode(pick(rng), 2, p), b = decode(pick(rng), 2, p);
      EXPECT_TRUE(proportional(oracle::pauli_matrix(a, p) * oracle::pauli_matrix(b, p),
                               oracle::pauli_matrix(compose(a, b, p), p)));
      EXPECT_EQ(power(a, p, p), PauliOp(2));
      EXPECT_EQ(power(a, 2, p), compose(a, a, p));
    }
  }
}

TEST(Encoding, RoundTripAndOrder) {
  for (Digit p : {2u, 3u, 5u}) {
    const std::size_t n = 3;
    const auto params = SystemParams::make(p, n);
    for (std::uint64_t c = 0; c < params.phase_space_size(); ++c) {
      const PauliOp op = decode(c, n, p);
      EXPECT_EQ(encode(op, p), c);
      EXPECT_EQ(from_symplectic_vector(symplectic_vector(op)), op);
    }
  }
  // x digits first, site 0 least significant
  const PauliOp x0 = decode(1, 2, 3);
  EXPECT_EQ(x0.x, (std::vector<Digit>{1, 0}));
  const PauliOp z0 = decode(9, 2, 3);
  EXPECT_EQ(z0.z, (std::vector<Digit>{1, 0}));
  EXPECT_TRUE(decode(0, 4, 5).is_identity());
}

TEST(BodyCount, CountsSupport) {
  const auto params = SystemParams::make(3, 4);
  EXPECT_EQ(body_count(parse_pauli("IXIZ", params)), 2u);
  EXPECT_EQ(body_count(parse_pauli("IIII", params)), 0u);
  EXPECT_EQ(body_count(parse_pauli("WYXZ", params)), 4u);
}

TEST(Text, LetterFormRoundTrip) {
  const auto q = SystemParams::make(2, 3);
  EXPECT_EQ(to_string(parse_pauli("XYZ", q), 2), "XYZ");
  EXPECT_EQ(to_string(parse_pauli("xiz", q), 2), "XIZ");
  const PauliOp y = parse_pauli("IYI", q);
  EXPECT_EQ(y.x[1], 1u);
  EXPECT_EQ(y.z[1], 1u);
  const auto t = SystemParams::make(3, 2);
  const PauliOp w = parse_pauli("WZ", t);
  EXPECT_EQ(w.x[0], 1u);
  EXPECT_EQ(w.z[0], 2u);
  EXPECT_EQ(to_string(w, 3), "WZ");
}

TEST(Text, ExponentPairForm) {
  const auto params = SystemParams::make(5, 2);
  const PauliOp op = parse_pauli("1 3, 0 4", params);
  EXPECT_EQ(op.x, (std::vector<Digit>{1, 0}));
  EXPECT_EQ(op.z, (std::vector<Digit>{3, 4}));
  EXPECT_EQ(parse_pauli(to_string(op, 5), params), op);
}

TEST(Text, Rejections) {
  const auto q = SystemParams::make(2, 2);
  EXPECT_THROW(parse_pauli("XW", q), ParseError);
  EXPECT_THROW(parse_pauli("XYZ", q), ParseError);
  EXPECT_THROW(parse_pauli("XQ", q), ParseError);
  EXPECT_THROW(parse_pauli("1 2, 0 0", q), ParseError);
  EXPECT_THROW(parse_pauli("1 0", q), ParseError);
}

}  // namespace
