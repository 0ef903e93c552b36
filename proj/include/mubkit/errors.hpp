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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mubkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Bad parameters: non-prime p, zero qupits, dimension overflow.
class InvalidParams : public Error {
 public:
  using Error::Error;
};

/// Operator text that does not follow the letter or exponent-pair grammar.
class ParseError : public Error {
 public:
  using Error::Error;
};

class NonCommuting : public Error {
 public:
  NonCommuting(std::size_t i, std::size_t j)
      : Error("generators " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
              " do not commute"),
        first(i),
        second(j) {}
  std::size_t first;
  std::size_t second;
};

class Dependent : public Error {
 public:
  explicit Dependent(std::size_t rank)
      : Error("generators are linearly dependent (rank " + std::to_string(rank) + ")"), rank(rank) {}
  std::size_t rank;
};

/// Internal consistency failure: a Lagrangian whose local factor tally is neither
/// of the two admissible shapes.
class FactorTallyViolation : public Error {
 public:
  using Error::Error;
};

/// Projector assembled from a generator set is not a rank-one projector; indicates a
/// phase or validation bug.
class ProjectorNotRankOne : public Error {
 public:
  using Error::Error;
};

class SameGroup : public Error {
 public:
  SameGroup() : Error("bases come from the same compatibility group") {}
};

class GuardExceeded : public Error {
 public:
  using Error::Error;
};

class CensusViolation : public Error {
 public:
  using Error::Error;
};

/// Input file or JSON document that does not match the expected schema.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

}  // namespace mubkit
