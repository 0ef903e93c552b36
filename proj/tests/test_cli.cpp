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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "mubkit/cli.hpp"

namespace {

using namespace mubkit;
namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("mubkit-cli-" + std::to_string(::getpid()) + "-" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream f(p);
    return {std::istreambuf_iterator<char>(f), {}};
  }
  fs::path dir_;
};

TEST_F(CliTest, FieldComplementVerifies) {
  const auto f = path("c.json");
  ASSERT_EQ(run({"complement", "--p", "2", "--n", "3", "--method", "field", "--out", f}).code, 0);
  const CliRun v = run({"verify", "--in", f});
  EXPECT_EQ(v.code, 0) << v.out;
  EXPECT_EQ(v.out.find("FAIL"), std::string::npos);
  EXPECT_NE(v.out.find("PASS spread"), std::string::npos);
  EXPECT_NE(v.out.find("[full"), std::string::npos);
}

TEST_F(CliTest, FilteredSearchFindsSeparableBellOnly) {
  const auto f = path("s.json");
  const CliRun r = run({"complement", "--p", "2", "--n", "3", "--method", "search", "--filter", "PI=0", "--out", f});
  ASSERT_EQ(r.code, 0) << r.err;
  const CliRun c = run({"classify", "--in", f});
  EXPECT_NE(c.out.find("distribution: SB:9"), std::string::npos) << c.out;
  const CliRun j = run({"classify", "--in", f, "--format", "json"});
  EXPECT_EQ(Json::parse(j.out)["counts"]["SB"], 9);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({"complement", "--p", "4", "--n", "1"}).code, 2);
  EXPECT_EQ(run({"complement", "--p", "2"}).code, 2);
  EXPECT_EQ(run({"complement", "--p", "5", "--n", "4", "--method", "search"}).code, 3);
  EXPECT_EQ(run({"complement", "--p", "2", "--n", "2", "--method", "search", "--filter", "PI=0"}).code, 4);
  EXPECT_EQ(run({"stoich", "--p", "5", "--n", "4", "--forbid", "P4", "--minimize", "C4"}).code, 5);
  EXPECT_EQ(run({"tables", "--which", "VI"}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"verify", "--in", path("missing.json")}).code, 2);
}

TEST_F(CliTest, TamperedAndMalformedFiles) {
  const auto f = path("c.json");
  ASSERT_EQ(run({"complement", "--p", "2", "--n", "2", "--out", f}).code, 0);
  Json j = Json::parse(slurp(f));
  j["classes"][3]["gens"][0]["z"][0] = j["classes"][3]["gens"][0]["z"][0].get<int>() ^ 1;
  const auto bad = path("bad.json");
  std::ofstream(bad) << j.dump();
  const CliRun v = run({"verify", "--in", bad});
  EXPECT_EQ(v.code, 1);
  EXPECT_NE(v.out.find("FAIL spread"), std::string::npos);
  EXPECT_NE(v.out.find("SKIP"), std::string::npos);
  const auto junk = path("junk.json");
  std::ofstream(junk) << "{\"p\": 2, \"n\": ";
  EXPECT_EQ(run({"verify", "--in", junk}).code, 2);
  EXPECT_EQ(run({"classify", "--in", junk}).code, 2);
}

TEST_F(CliTest, SampledVerificationSaysSo) {
  const auto f = path("c.json");
  ASSERT_EQ(run({"complement", "--p", "3", "--n", "2", "--out", f}).code, 0);
  const CliRun v = run({"verify", "--in", f, "--hilbert-max-dim", "4", "--samples", "160"});
  EXPECT_EQ(v.code, 0) << v.out;
  EXPECT_NE(v.out.find("[sampled"), std::string::npos);
}

TEST_F(CliTest, RoundTripIsByteStable) {
  const auto a = path("a.json"), b = path("b.json");
  ASSERT_EQ(run({"complement", "--p", "3", "--n", "2", "--out", a}).code, 0);
  ASSERT_EQ(run({"complement", "--p", "3", "--n", "2", "--out", b}).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(run({"verify", "--in", a}).out, run({"verify", "--in", b}).out);
  EXPECT_EQ(run({"classify", "--in", a}).out, run({"classify", "--in", b}).out);
  const CliRun stdout_run = run({"complement", "--p", "3", "--n", "2"});
  EXPECT_EQ(stdout_run.out, slurp(a));
}

TEST_F(CliTest, Classify) {
  const auto f = path("c.json");
  ASSERT_EQ(run({"complement", "--p", "2", "--n", "2", "--out", f}).code, 0);
  EXPECT_NE(run({"classify", "--in", f}).out.find("distribution: PI:3,B:2"), std::string::npos);
  const CliRun g = run({"classify", "--generators", "XZXI,ZXIX,XIXZ,IXZX", "--p", "2"});
  EXPECT_EQ(g.code, 0);
  EXPECT_EQ(g.out.substr(0, 2), "C4");
  const CliRun pairs = run({"classify", "--generators", "1 0,1 0;0 1,0 2", "--p", "3"});
  EXPECT_EQ(pairs.code, 0) << pairs.err;
  EXPECT_EQ(pairs.out.substr(0, 1), "B");
  EXPECT_EQ(run({"classify", "--generators", "XI,ZI", "--p", "2"}).code, 2);
}

TEST_F(CliTest, Stoich) {
  EXPECT_EQ(run({"stoich", "--p", "2", "--n", "4", "--count-only"}).out, "48\n");
  EXPECT_EQ(run({"stoich", "--p", "3", "--n", "4", "--forbid", "P4", "--count-only"}).out, "11\n");
  const CliRun m = run({"stoich", "--p", "5", "--n", "4", "--minimize", "P4"});
  EXPECT_EQ(m.out.substr(0, 13), "min P4 = 206\n");
  const CliRun fixed = run({"stoich", "--p", "3", "--n", "4", "--fix", "PI=4", "--minimize", "P4", "--format", "json"});
  EXPECT_EQ(Json::parse(fixed.out)["value"], 6);
  const CliRun table = run({"stoich", "--p", "2", "--n", "3"});
  EXPECT_NE(table.out.find("4 necessary-condition solution(s)"), std::string::npos);
  const CliRun csv = run({"stoich", "--p", "2", "--n", "3", "--format", "csv"});
  EXPECT_EQ(csv.out.substr(0, 18), "label,s1,s2,s3,s4\n");
  EXPECT_EQ(run({"stoich", "--p", "2", "--n", "5"}).code, 2);
}

TEST_F(CliTest, Tables) {
  const CliRun one = run({"tables", "--which", "I", "--p", "3"});
  EXPECT_NE(one.out.find("PI     4   3   2   1   0"), std::string::npos) << one.out;
  EXPECT_NE(one.out.find("SB     0   3   6   9  12"), std::string::npos);
  EXPECT_NE(one.out.find("G3    24  22  20  18  16"), std::string::npos);
  const CliRun three = run({"tables", "--which", "III"});
  EXPECT_NE(three.out.find("all       12      54     108      81"), std::string::npos) << three.out;
  const CliRun five = run({"tables", "--which", "V", "--p", "5"});
  EXPECT_NE(five.out.find("all       96    3456   55296"), std::string::npos) << five.out;
  const CliRun four = run({"tables", "--which", "IV"});
  EXPECT_NE(four.out.find("P4     --   --    6    0  260  206"), std::string::npos) << four.out;
  EXPECT_NE(four.out.find("note:"), std::string::npos);
  EXPECT_EQ(run({"tables", "--which", "II"}).code, 0);
}

}  // namespace
