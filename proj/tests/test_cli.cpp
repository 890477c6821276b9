// Copyright 2026 The gupcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <cstdlib>
#include <sstream>

#include <gtest/gtest.h>

#include "gup/cli/run.hpp"
#include "gup/cli/table.hpp"
#include "gup/error.hpp"

namespace {

using gup::cli::Table;

struct Output {
  int code = 0;
  std::string out;
  std::string err;
};

Output runCli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Output r;
  r.code = gup::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

TEST(Grid, InclusiveEndpoints) {
  const auto g = gup::cli::parseGrid("4:8:0.5");
  ASSERT_EQ(g.size(), 9u);
  EXPECT_EQ(g.front(), 4.0);
  EXPECT_EQ(g.back(), 8.0);
  EXPECT_EQ(gup::cli::parseGrid("0:0.3:0.1").size(), 4u);
  EXPECT_EQ(gup::cli::parseGrid("2.5"), std::vector<double>{2.5});
  EXPECT_THROW(gup::cli::parseGrid("1:0:0.1"), gup::InvalidArgument);
  EXPECT_THROW(gup::cli::parseGrid("a"), gup::InvalidArgument);
  EXPECT_THROW(gup::cli::parseGrid("0:1:0"), gup::InvalidArgument);
}

TEST(Table, CsvLayoutAndRoundTrip) {
  Table t;
  t.metadata = {{"alpha", 0.1}, {"name", std::string("a,b")}};
  t.columns = {"x", "n", "ok"};
  t.rows = {{1.0 / 3.0, 7LL, true}};
  std::ostringstream os;
  gup::cli::writeCsv(t, os);
  const std::string s = os.str();
  EXPECT_EQ(s, "# alpha=0.10000000000000001\n# name=\"a,b\"\nx,n,ok\n0.33333333333333331,7,true\n");
  EXPECT_EQ(std::strtod("0.33333333333333331", nullptr), 1.0 / 3.0);
}

TEST(Table, JsonWritesNonFiniteAsNull) {
  Table t;
  t.columns = {"v"};
  t.rows = {{std::nan("")}};
  std::ostringstream os;
  gup::cli::writeJson(t, os);
  EXPECT_NE(os.str().find("\"v\": null"), std::string::npos) << os.str();
  EXPECT_THROW(gup::cli::parseFormat("xml"), gup::InvalidArgument);
}

TEST(Run, ApproxDefaultsToJson) {
  const auto r = runCli({"approx", "--D", "50", "--N", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"E_N\""), std::string::npos);
  EXPECT_NE(r.out.find("\"ratio\": 0.9998885"), std::string::npos) << r.out;
}

TEST(Run, SweepIsCsvWithSpecifiedColumns) {
  const auto r = runCli({"sweep", "--y", "3", "--tol", "1e-3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\ny,lower,oracle,upper,asymptote,ratio_lower,ratio_oracle,ratio_upper"), std::string::npos);
  EXPECT_NE(r.out.find("# version="), std::string::npos);
}

TEST(Run, Deterministic) {
  const std::vector<std::string> args{"upper", "--y", "1:3:1", "--format", "json"};
  EXPECT_EQ(runCli(args).out, runCli(args).out);
}

TEST(Run, ExitCodes) {
  EXPECT_EQ(runCli({}).code, 1);
  EXPECT_EQ(runCli({"bogus"}).code, 1);
  EXPECT_EQ(runCli({"approx", "--D", "x"}).code, 1);
  EXPECT_EQ(runCli({"upper", "--alpha", "2", "--y", "1"}).code, 1);
  EXPECT_EQ(runCli({"oracle", "--y", "6", "--tol", "1e-12"}).code, 2);
  EXPECT_EQ(runCli({"verify", "--only", "6"}).code, 0);
  EXPECT_EQ(runCli({"verify", "--only", "13"}).code, 1);
  const auto help = runCli({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("sweep"), std::string::npos);
}

TEST(Run, VemuriAndKernel) {
  const auto v = runCli({"vemuri", "--a", "0.5", "--alpha", "0.7071067811865476", "--coeffs", "1"});
  ASSERT_EQ(v.code, 0) << v.err;
  EXPECT_NE(v.out.find("1.56777634807"), std::string::npos) << v.out;
  const auto k = runCli({"kernel", "--m", "1", "--m0", "4", "--x", "0"});
  ASSERT_EQ(k.code, 0) << k.err;
  EXPECT_NE(k.out.find(",28.7109375000000"), std::string::npos) << k.out;
}

}  // namespace
