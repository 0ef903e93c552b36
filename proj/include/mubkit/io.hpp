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

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "mubkit/complement.hpp"
#include "mubkit/stoich.hpp"

namespace mubkit {

using Json = nlohmann::ordered_json;

inline Json to_json(const PauliOp& op) { return Json{{"x", op.x}, {"z", op.z}}; }

/// Generators only; members are re-enumerated on load.
inline Json to_json(const Complement& c) {
  Json classes = Json::array();
  for (const auto& gens : c.classes) {
    Json g = Json::array();
    for (const auto& op : gens) g.push_back(to_json(op));
    classes.push_back(Json{{"gens", g}});
  }
  return Json{{"p", c.params.p}, {"n", c.params.n_qupits}, {"classes", classes}};
}

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw MalformedInput(where + ": missing \"" + key + "\"");
  return j.at(key);
}

inline std::uint64_t uint_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw MalformedInput(where + ": \"" + key + "\" is not a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

inline std::vector<Digit> digit_vector(const Json& j, const char* key, const SystemParams& params,
                                       const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_array() || v.size() != params.n_qupits) {
    throw MalformedInput(where + ": \"" + key + "\" must be an array of " + std::to_string(params.n_qupits) +
                         " integers");
  }
  std::vector<Digit> out;
  for (const Json& d : v) {
    if (!d.is_number_integer() || d.get<std::int64_t>() < 0 || d.get<std::int64_t>() >= params.p) {
      throw MalformedInput(where + ": \"" + key + "\" entries must be integers in [0, p)");
    }
    out.push_back(d.get<Digit>());
  }
  return out;
}

}  // namespace detail

/// Shape and range checks only; spread properties are left to verify_spread.
inline Complement complement_from_json(const Json& j) {
  SystemParams params;
  try {
    params = SystemParams::make(detail::uint_field(j, "p", "complement"), detail::uint_field(j, "n", "complement"));
  } catch (const InvalidParams& e) {
    throw MalformedInput(std::string("complement: ") + e.what());
  }
  const Json& classes = detail::field(j, "classes", "complement");
  if (!classes.is_array()) throw MalformedInput("complement: \"classes\" is not an array");
  Complement c;
  c.params = params;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const std::string where = "class " + std::to_string(k);
    const Json& gens = detail::field(classes[k], "gens", where);
    if (!gens.is_array()) throw MalformedInput(where + ": \"gens\" is not an array");
    std::vector<PauliOp> ops;
    for (const Json& g : gens) {
      ops.emplace_back(detail::digit_vector(g, "x", params, where), detail::digit_vector(g, "z", params, where));
    }
    c.classes.push_back(std::move(ops));
  }
  return c;
}

inline Complement load_complement(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedInput(path + ": " + e.what());
  }
  return complement_from_json(j);
}

inline Json to_json(const Distribution& d) {
  Json counts = Json::object();
  for (const auto& [l, k] : d.counts) counts[to_string(l)] = k;
  Json per = Json::array();
  for (const auto& t : d.per_basis) {
    per.push_back(Json{{"label", to_string(t.label)}, {"variant", t.variant()}, {"profile", t.profile.counts}});
  }
  return Json{{"counts", counts}, {"per_basis", per}};
}

inline Json to_json(const Solution& s) {
  Json j = Json::object();
  for (std::size_t i = 0; i < s.labels.size(); ++i) j[to_string(s.labels[i])] = s.values[i];
  return j;
}

/// Solutions as records plus {count, extremes}; extremes hold [min, max] per label.
inline Json to_json(const SolutionSet& set, const std::vector<MubLabel>& labels) {
  Json sols = Json::array();
  for (const auto& s : set.solutions) sols.push_back(to_json(s));
  Json extremes = Json::object();
  for (std::size_t v = 0; v < labels.size() && !set.solutions.empty(); ++v) {
    std::int64_t lo = set.solutions.front().values[v], hi = lo;
    for (const auto& s : set.solutions) {
      lo = std::min(lo, s.values[v]);
      hi = std::max(hi, s.values[v]);
    }
    extremes[to_string(labels[v])] = Json::array({lo, hi});
  }
  return Json{{"kind", "necessary-condition solutions"},
              {"solutions", sols},
              {"summary", Json{{"count", set.count.str()}, {"extremes", extremes}}}};
}

/// One row per label, one column per solution.
inline std::string to_csv(const std::vector<Solution>& sols, const std::vector<MubLabel>& labels) {
  std::ostringstream os;
  os << "label";
  for (std::size_t k = 0; k < sols.size(); ++k) os << ",s" << k + 1;
  os << '\n';
  for (std::size_t v = 0; v < labels.size(); ++v) {
    os << to_string(labels[v]);
    for (const auto& s : sols) os << ',' << s.values[v];
    os << '\n';
  }
  os << "all";
  for (const auto& s : sols) {
    std::int64_t t = 0;
    for (auto x : s.values) t += x;
    os << ',' << t;
  }
  os << '\n';
  return os.str();
}

}  // namespace mubkit
