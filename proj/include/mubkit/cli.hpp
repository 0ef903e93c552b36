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
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mubkit/io.hpp"

namespace mubkit {

namespace cli {

inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kBadInput = 2;
inline constexpr int kGuard = 3;
inline constexpr int kFilterUnsatisfied = 4;
inline constexpr int kInfeasible = 5;

/// Field construction stays below this many phase-space points.
inline constexpr std::uint64_t kFieldGuard = std::uint64_t{1} << 26;

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    const auto a = cur.find_first_not_of(" \t");
    const auto b = cur.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(cur.substr(a, b - a + 1));
  }
  return out;
}

inline MubLabel parse_label(const std::string& s) {
  auto l = label_from_string(s);
  if (!l) throw ParseError("unknown label \"" + s + "\"");
  return *l;
}

/// "PI=0,SB=9" -> {PI:0, SB:9}.
inline std::map<MubLabel, std::uint64_t> parse_counts(const std::string& text) {
  std::map<MubLabel, std::uint64_t> out;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("expected LABEL=COUNT, got \"" + item + "\"");
    const std::string value = item.substr(eq + 1);
    if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("count in \"" + item + "\" is not a nonnegative integer");
    }
    out[parse_label(item.substr(0, eq))] = std::stoull(value);
  }
  return out;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InvalidParams("cannot write " + path);
  f << text;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void render(std::ostream& os) const {
    std::vector<std::size_t> w(header.size(), 0);
    auto widen = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
    };
    widen(header);
    for (const auto& r : rows) widen(r);
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) os << "  ";
        if (i == 0) os << std::left << std::setw(static_cast<int>(w[i])) << r[i];
        else os << std::right << std::setw(static_cast<int>(w[i])) << r[i];
      }
      os << std::left << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
  }
};

inline std::string profile_cells(const NBodyProfile& p) { return p.to_string(); }

// ---- complement ---------------------------------------------------------

struct ComplementArgs {
  std::uint64_t p = 0, n = 0;
  std::string method = "field";
  std::size_t limit = 1;
  std::string filter;
  std::string symmetry = "auto";
  std::uint64_t max_nodes = 0;
  std::string out_path;
};

inline int cmd_complement(const ComplementArgs& a, std::ostream& out, std::ostream& info) {
  const SystemParams params = SystemParams::make(a.p, a.n);
  std::vector<Complement> found;
  std::vector<std::string> summaries;
  if (a.method == "field") {
    if (!a.filter.empty()) throw InvalidParams("--filter applies to --method search only");
    if (params.phase_space_size() > kFieldGuard) {
      throw GuardExceeded("p^(2N) = " + std::to_string(params.phase_space_size()) + " exceeds the field guard");
    }
    found.push_back(field_spread(params));
    summaries.push_back(complement_distribution(found.back()).summary());
  } else if (a.method == "search") {
    SearchOptions opt;
    opt.limit = a.limit;
    opt.filter = parse_counts(a.filter);
    opt.max_nodes = a.max_nodes;
    if (a.symmetry == "on") opt.symmetry_breaking = true;
    else if (a.symmetry == "off") opt.symmetry_breaking = false;
    else opt.symmetry_breaking = opt.filter.empty();
    const SearchResult r = search_spreads(params, opt);
    for (std::size_t k = 0; k < r.complements.size(); ++k) {
      found.push_back(r.complements[k]);
      std::string s;
      for (const auto& [l, c] : r.distributions[k]) s += (s.empty() ? "" : ",") + to_string(l) + ":" + std::to_string(c);
      summaries.push_back(s);
    }
    info << "search: " << r.nodes << " nodes, " << found.size() << " complement(s), symmetry breaking "
         << (opt.symmetry_breaking ? "on" : "off") << (r.exhausted ? ", exhausted" : "") << '\n';
    if (found.empty()) {
      info << "no complement satisfies the filter\n";
      return kFilterUnsatisfied;
    }
  } else {
    throw InvalidParams("unknown method \"" + a.method + "\"");
  }
  for (std::size_t k = 0; k < summaries.size(); ++k) info << "complement " << k + 1 << ": " << summaries[k] << '\n';
  const std::string text = to_json(found.front()).dump(2) + "\n";
  if (a.out_path.empty()) out << text;
  else write_text(a.out_path, text);
  return kOk;
}

// ---- verify -------------------------------------------------------------

struct VerifyArgs {
  std::string in;
  std::uint64_t hilbert_max_dim = 81;
  std::size_t samples = 10000;
  std::uint64_t seed = 20260101;
};

inline int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const Complement c = load_complement(a.in);
  const SystemParams& params = c.params;
  bool ok = true;
  auto report = [&](bool pass, const std::string& name, const std::string& detail) {
    out << (pass ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
    ok = ok && pass;
  };
  auto skip = [&](const std::string& name, const std::string& why) {
    out << "SKIP " << name << ": " << why << '\n';
    ok = false;
  };
  const SpreadReport sr = verify_spread(c);
  report(sr.pass, "spread", sr.pass ? std::to_string(sr.classes) + " classes cover " + std::to_string(sr.covered) +
                                          " nonidentity operators exactly once"
                                    : sr.failure);
  if (!sr.pass) {
    for (const char* n : {"purity census", "identity-factor balance", "hilbert"}) skip(n, "spread check failed");
    return kCheckFailed;
  }
  PurityCensus pc;
  try {
    pc = purity_census(c);
    report(true, "purity census",
           "every qupit pure in " + std::to_string(params.p + 1) + " classes, entangled in " +
               std::to_string(params.dim - params.p));
    report(true, "identity-factor balance",
           "each qupit carries " + std::to_string(pc.identity_factors.front()) + " identity factors");
  } catch (const CensusViolation& e) {
    report(false, "purity census", e.what());
    skip("identity-factor balance", "census failed");
  }
  HilbertOptions ho;
  ho.max_full_dim = a.hilbert_max_dim;
  ho.samples = a.samples;
  ho.seed = a.seed;
  const HilbertReport h = hilbert_verify(c, ho);
  const std::string mode = h.sampled ? " [sampled, " + std::to_string(h.overlaps_checked) + " overlaps]"
                                     : " [full, " + std::to_string(h.overlaps_checked) + " overlaps]";
  std::ostringstream dev;
  dev << std::scientific << std::setprecision(2);
  auto fmt = [&](double x) {
    dev.str("");
    dev << x;
    return dev.str();
  };
  report(h.max_overlap_deviation < kHilbertTolerance, "hilbert unbiasedness" + mode,
         "max | |<a|b>|^2 - 1/d | = " + fmt(h.max_overlap_deviation));
  report(h.max_projector_deviation < kHilbertTolerance && h.max_completeness_deviation < kHilbertTolerance &&
             h.max_eigen_deviation < kHilbertTolerance,
         std::string("hilbert projectors") + (h.sampled ? " [sampled: eigen equations and norms]" : " [full]"),
         "max deviation " + fmt(std::max({h.max_projector_deviation, h.max_completeness_deviation,
                                          h.max_eigen_deviation})));
  report(h.max_purity_deviation < kHilbertTolerance && h.purity_constant && h.purity_matches_symplectic,
         std::string("hilbert purity") + (h.sampled ? " [sampled]" : " [full]"),
         "max distance from {0,1} " + fmt(h.max_purity_deviation) +
             (h.purity_matches_symplectic ? ", agrees with factor tally" : ", DISAGREES with factor tally"));
  return ok ? kOk : kCheckFailed;
}

// ---- classify -----------------------------------------------------------

struct ClassifyArgs {
  std::string in;
  std::string generators;
  std::uint64_t p = 0;
  std::string format = "table";
};

inline int cmd_classify(const ClassifyArgs& a, std::ostream& out) {
  if (!a.generators.empty()) {
    if (a.p == 0) throw InvalidParams("--generators needs --p");
    const char sep = a.generators.find(';') != std::string::npos ? ';' : ',';
    const auto texts = split(a.generators, sep);
    if (texts.empty()) throw ParseError("no generators given");
    std::size_t n = 0;
    if (texts.front().find(',') == std::string::npos && texts.front().find(' ') == std::string::npos) {
      n = texts.front().size();
    } else {
      n = split(texts.front(), ',').size();
    }
    const SystemParams params = SystemParams::make(a.p, n);
    std::vector<PauliOp> ops;
    for (const auto& t : texts) ops.push_back(parse_pauli(t, params));
    const MubType t = classify_basis(enumerate_group(validate_generators(ops, params)));
    if (a.format == "json") {
      out << Json{{"label", to_string(t.label)}, {"variant", t.variant()}, {"profile", t.profile.counts}}.dump(2)
          << '\n';
    } else {
      out << to_string(t.label) << "  " << t.variant() << "  " << t.profile.to_string() << '\n';
    }
    return kOk;
  }
  if (a.in.empty()) throw InvalidParams("classify needs --in or --generators");
  const Complement c = load_complement(a.in);
  const Distribution d = complement_distribution(c);
  if (a.format == "json") {
    out << to_json(d).dump(2) << '\n';
    return kOk;
  }
  Table t{{"class", "label", "variant", "profile"}, {}};
  for (std::size_t k = 0; k < d.per_basis.size(); ++k) {
    const auto& b = d.per_basis[k];
    t.rows.push_back({std::to_string(k), to_string(b.label), b.variant(), b.profile.to_string()});
  }
  t.render(out);
  out << "distribution: " << d.summary() << '\n';
  return kOk;
}

// ---- stoich -------------------------------------------------------------

struct StoichArgs {
  std::uint64_t p = 0, n = 0;
  std::string forbid;
  std::string fix;
  bool count_only = false;
  std::string minimize, maximize;
  std::string format = "table";
};

inline void render_solutions(const std::vector<Solution>& sols, const std::vector<MubLabel>& labels,
                             std::ostream& out) {
  Table t;
  for (MubLabel l : labels) t.header.push_back(to_string(l));
  for (const auto& s : sols) {
    std::vector<std::string> row;
    for (auto v : s.values) row.push_back(std::to_string(v));
    t.rows.push_back(std::move(row));
  }
  t.render(out);
}

inline int cmd_stoich(const StoichArgs& a, std::ostream& out) {
  const SystemParams params = SystemParams::make(a.p, a.n);
  std::set<MubLabel> forbid;
  for (const auto& f : split(a.forbid, ',')) forbid.insert(parse_label(f));
  StoichSystem sys = make_system(params, forbid);
  for (const auto& [l, k] : parse_counts(a.fix)) sys.fix(l, static_cast<std::int64_t>(k));
  if (!a.minimize.empty() && !a.maximize.empty()) throw InvalidParams("--minimize and --maximize are exclusive");
  if (!a.minimize.empty() || !a.maximize.empty()) {
    const bool min = !a.minimize.empty();
    const MubLabel l = parse_label(min ? a.minimize : a.maximize);
    const Solution s = extremize(sys, l, min ? Direction::Minimize : Direction::Maximize);
    if (a.format == "json") {
      out << Json{{"objective", (min ? "min " : "max ") + to_string(l)},
                  {"value", s.count(l)},
                  {"solution", to_json(s)}}
                 .dump(2)
          << '\n';
    } else if (a.format == "csv") {
      out << to_csv({s}, sys.labels);
    } else {
      out << (min ? "min " : "max ") << to_string(l) << " = " << s.count(l) << '\n' << s.to_string() << '\n';
    }
    return kOk;
  }
  const SolutionSet set = enumerate_solutions(sys, !a.count_only);
  if (a.count_only) {
    out << set.count << '\n';
    return kOk;
  }
  if (a.format == "json") out << to_json(set, sys.labels).dump(2) << '\n';
  else if (a.format == "csv") out << to_csv(set.solutions, sys.labels);
  else {
    render_solutions(set.solutions, sys.labels, out);
    out << set.count << " necessary-condition solution(s)\n";
  }
  return kOk;
}

// ---- tables -------------------------------------------------------------

inline void table_three_qupits(std::uint64_t p, std::ostream& out) {
  const SystemParams params = SystemParams::make(p, 3);
  auto sols = enumerate_solutions(make_system(params)).solutions;
  std::reverse(sols.begin(), sols.end());
  out << "three qupits, p = " << p << '\n';
  Table t;
  t.header = {"type"};
  for (std::size_t k = 0; k < sols.size(); ++k) t.header.push_back("");
  for (MubLabel l : {MubLabel::PI, MubLabel::SB, MubLabel::G3}) {
    std::vector<std::string> row = {to_string(l)};
    for (const auto& s : sols) row.push_back(std::to_string(s.count(l)));
    t.rows.push_back(std::move(row));
  }
  t.render(out);
}

inline void table_profiles(const SystemParams& params, std::size_t columns, std::ostream& out) {
  const ProfileTable pt = profile_table(params);
  Table t;
  t.header = {"type"};
  for (std::size_t k = 1; k <= columns; ++k) t.header.push_back(std::to_string(k) + "-body");
  auto row = [&](const std::string& name, const NBodyProfile& prof) {
    std::vector<std::string> r = {name};
    for (std::size_t k = 0; k < columns; ++k) r.push_back(std::to_string(prof.counts[k]));
    t.rows.push_back(std::move(r));
  };
  for (MubLabel l : pt.labels) row(to_string(l), pt.rows.at(l));
  row("all", pt.totals);
  t.render(out);
}

/// Standard and nonstandard four-qupit distributions found as solver extrema.
inline void table_four_qupit_examples(std::ostream& out) {
  using L = MubLabel;
  const std::vector<L> shown = {L::PI, L::S2B, L::SG3, L::BB, L::G4, L::C4, L::P4};
  Table t;
  t.header = {"type"};
  std::vector<Solution> cols;
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p : {2, 3, 5}) {
    const SystemParams params = SystemParams::make(p, 4);
    StoichSystem standard = make_system(params);
    standard.fix(L::PI, static_cast<std::int64_t>(p + 1));
    StoichSystem nonstandard = make_system(params);
    nonstandard.fix(L::PI, 0);
    if (p == 2) {
      cols.push_back(extremize(standard, {{L::C4, Direction::Maximize}}));
      cols.push_back(extremize(nonstandard, {{L::SG3, Direction::Maximize}, {L::C4, Direction::Minimize}}));
    } else {
      cols.push_back(extremize(standard, {{L::P4, Direction::Minimize}, {L::C4, Direction::Maximize}}));
      cols.push_back(extremize(nonstandard, {{L::SG3, Direction::Maximize},
                                             {L::P4, Direction::Minimize},
                                             {L::C4, Direction::Maximize}}));
    }
    ps.push_back(p);
    ps.push_back(p);
  }
  for (std::size_t k = 0; k < cols.size(); ++k) t.header.push_back("p=" + std::to_string(ps[k]));
  for (L l : shown) {
    std::vector<std::string> row = {to_string(l)};
    for (const auto& s : cols) {
      const bool present = std::find(s.labels.begin(), s.labels.end(), l) != s.labels.end();
      row.push_back(present ? std::to_string(s.count(l)) : "--");
    }
    t.rows.push_back(std::move(row));
  }
  std::vector<std::string> all = {"all"};
  for (const auto& s : cols) {
    std::int64_t sum = 0;
    for (auto v : s.values) sum += v;
    all.push_back(std::to_string(sum));
  }
  t.rows.push_back(all);
  out << "four qupits: standard (PI = p+1) and nonstandard (PI = 0) columns\n";
  t.render(out);
  out << "note: the p=3 nonstandard column is often quoted as SG3 16, BB 0, C4 66, P4 0; that choice gives\n"
         "      4 BB + 3 G4 + C4 = 66, not the required 72. The solver column above balances.\n";
}

/// Enumerated profiles of the reference generator sets; four qubits.
inline void table_qubit_profiles(std::ostream& out) {
  out << "four qubits\n";
  using L = MubLabel;
  const SystemParams params = SystemParams::make(2, 4);
  Table t{{"type", "1-body", "2-body", "3-body", "4-body"}, {}};
  for (L l : {L::PI, L::S2B, L::SG3, L::BB, L::G4, L::C4}) {
    const auto gens = reference_generators(l, 2, 4);
    const NBodyProfile prof = nbody_profile(enumerate_group(validate_generators(gens, params)));
    std::vector<std::string> row = {to_string(l)};
    for (auto c : prof.counts) row.push_back(std::to_string(c));
    t.rows.push_back(std::move(row));
  }
  std::vector<std::string> all = {"all"};
  for (auto c : operator_totals(params).counts) all.push_back(std::to_string(c));
  t.rows.push_back(all);
  t.render(out);
}

struct TablesArgs {
  std::string which;
  std::uint64_t p = 0;
};

inline int cmd_tables(const TablesArgs& a, std::ostream& out) {
  const std::string w = a.which;
  if (w == "I") {
    if (a.p) table_three_qupits(a.p, out);
    else {
      table_three_qupits(2, out);
      out << '\n';
      table_three_qupits(3, out);
    }
  } else if (w == "II") {
    const std::uint64_t p = a.p ? a.p : 3;
    for (std::uint32_t n = 2; n <= 4; ++n) {
      out << "N = " << n << ", p = " << p << '\n';
      table_profiles(SystemParams::make(p, n), n, out);
      if (n < 4) out << '\n';
    }
  } else if (w == "III") {
    table_qubit_profiles(out);
  } else if (w == "IV") {
    table_four_qupit_examples(out);
  } else if (w == "V") {
    std::vector<std::uint64_t> ps = a.p ? std::vector<std::uint64_t>{a.p} : std::vector<std::uint64_t>{3, 5};
    for (std::size_t k = 0; k < ps.size(); ++k) {
      if (k) out << '\n';
      out << "four qupits, p = " << ps[k] << '\n';
      table_profiles(SystemParams::make(ps[k], 4), 3, out);
    }
  } else {
    throw InvalidParams("unknown table \"" + w + "\"; expected I, II, III, IV or V");
  }
  return kOk;
}

}  // namespace cli

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"mubkit: Pauli mutually unbiased bases and their entanglement types"};
  app.require_subcommand(1);

  cli::ComplementArgs ca;
  auto* complement = app.add_subcommand("complement", "build a full complement and write it as JSON");
  complement->add_option("--p", ca.p, "prime")->required();
  complement->add_option("--n", ca.n, "number of qupits")->required();
  complement->add_option("--method", ca.method, "field or search")->check(CLI::IsMember({"field", "search"}));
  complement->add_option("--limit", ca.limit, "complements to find (search)");
  complement->add_option("--filter", ca.filter, "required counts, e.g. PI=0,SB=9 (search)");
  complement->add_option("--symmetry-breaking", ca.symmetry, "on, off or auto (off when filtering)")
      ->check(CLI::IsMember({"on", "off", "auto"}));
  complement->add_option("--max-nodes", ca.max_nodes, "node budget per top-level branch (search)");
  complement->add_option("--out", ca.out_path, "output file; stdout when omitted");

  cli::VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check a complement file");
  verify->add_option("--in", va.in, "complement JSON")->required();
  verify->add_option("--hilbert-max-dim", va.hilbert_max_dim, "full state-space checks up to this dimension");
  verify->add_option("--samples", va.samples, "overlaps sampled above the threshold");
  verify->add_option("--seed", va.seed, "sampling seed");

  cli::ClassifyArgs cla;
  auto* classify = app.add_subcommand("classify", "classify the bases of a complement or one generator set");
  classify->add_option("--in", cla.in, "complement JSON");
  classify->add_option("--generators", cla.generators, "e.g. XZXI,ZXIX,XIXZ,IXZX");
  classify->add_option("--p", cla.p, "prime, with --generators");
  classify->add_option("--format", cla.format, "table or json")->check(CLI::IsMember({"table", "json"}));

  cli::StoichArgs sa;
  auto* stoich = app.add_subcommand("stoich", "enumerate or extremize admissible type counts");
  stoich->add_option("--p", sa.p, "prime")->required();
  stoich->add_option("--n", sa.n, "number of qupits (<= 4)")->required();
  stoich->add_option("--forbid", sa.forbid, "labels excluded, e.g. P4");
  stoich->add_option("--fix", sa.fix, "fixed counts, e.g. PI=4");
  stoich->add_flag("--count-only", sa.count_only, "print only the number of solutions");
  stoich->add_option("--minimize", sa.minimize, "label to minimize");
  stoich->add_option("--maximize", sa.maximize, "label to maximize");
  stoich->add_option("--format", sa.format, "table, json or csv")->check(CLI::IsMember({"table", "json", "csv"}));

  cli::TablesArgs ta;
  auto* tables = app.add_subcommand("tables", "regenerate the reference tables");
  tables->add_option("--which", ta.which, "I, II, III, IV or V")->required();
  tables->add_option("--p", ta.p, "prime where the table depends on it");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return cli::kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return cli::kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return cli::kBadInput;
  }

  try {
    if (complement->parsed()) return cli::cmd_complement(ca, out, err);
    if (verify->parsed()) return cli::cmd_verify(va, out);
    if (classify->parsed()) return cli::cmd_classify(cla, out);
    if (stoich->parsed()) return cli::cmd_stoich(sa, out);
    if (tables->parsed()) return cli::cmd_tables(ta, out);
  } catch (const GuardExceeded& e) {
    err << "error: " << e.what() << '\n';
    return cli::kGuard;
  } catch (const Infeasible& e) {
    err << "error: " << e.what() << '\n';
    return cli::kInfeasible;
  } catch (const InvalidParams& e) {
    err << "error: " << e.what() << '\n';
    return cli::kBadInput;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return cli::kBadInput;
  } catch (const MalformedInput& e) {
    err << "error: " << e.what() << '\n';
    return cli::kBadInput;
  } catch (const NonCommuting& e) {
    err << "error: " << e.what() << '\n';
    return cli::kBadInput;
  } catch (const Dependent& e) {
    err << "error: " << e.what() << '\n';
    return cli::kBadInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return cli::kCheckFailed;
  }
  return cli::kBadInput;
}

}  // namespace mubkit
