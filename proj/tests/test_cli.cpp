/*
 * Copyright 2026 The noncoll Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "noncoll/cli.hpp"

namespace {

using namespace noncoll;
using namespace noncoll::cli;

struct Output {
  int status;
  std::string out, err;
};

Output invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "noncoll");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

RunConfig parse(std::vector<std::string> args, const char* env_tol = nullptr) {
  args.insert(args.begin(), "noncoll");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_args(static_cast<int>(argv.size()), argv.data(), env_tol);
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

TEST(Numbers, FormatAndParse) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-2.5e-30), "-2.4999999999999999e-30");
  for (double x : {0.17792335564307066, 1e-300, 12345.678, -0.0}) EXPECT_EQ(parse_double(format_double(x)), x);
  EXPECT_THROW(parse_double("1.5x"), UsageError);
  EXPECT_THROW(parse_double(""), UsageError);
  EXPECT_THROW(parse_double("nan"), UsageError);
}

TEST(Parse, DefaultsAndFields) {
  const auto c = parse({"eval", "--process", "motion", "--N", "3", "--T", "2", "--ell", "0.5", "--r", "1.5"});
  EXPECT_EQ(c.command, Command::Eval);
  EXPECT_EQ(c.process, ProcessTag::MotionAR);
  EXPECT_EQ(c.N, 3);
  EXPECT_EQ(c.T, 2.0);
  EXPECT_EQ(*c.ell, 0.5);
  EXPECT_EQ(*c.r, 1.5);
  EXPECT_EQ(c.tol, kDefaultTolerance);
  EXPECT_EQ(c.format, Format::Csv);
  const auto g = parse({"table", "--process", "bessel", "--N", "2", "--grid", "h", "0.5:3:6"});
  ASSERT_TRUE(g.grid.has_value());
  EXPECT_EQ(g.grid->axis, Axis::H);
  EXPECT_EQ(g.grid->count, 6);
  const auto s = parse({"eval", "--process", "general-ar-c", "--N", "2", "--start", "0.1,0.4", "--h", "2"});
  EXPECT_EQ(*s.start, (std::vector<double>{0.1, 0.4}));
}

TEST(Parse, ToleranceFromEnvironment) {
  EXPECT_EQ(parse({"eval", "--process", "bessel", "--h", "1"}, "1e-9").tol, 1e-9);
  EXPECT_EQ(parse({"eval", "--process", "bessel", "--h", "1", "--tol", "1e-7"}, "1e-9").tol, 1e-7);
  EXPECT_THROW(parse({"eval", "--process", "bessel", "--h", "1"}, "fast"), UsageError);
}

TEST(Parse, Rejections) {
  const std::vector<std::vector<std::string>> bad = {
      {},
      {"integrate"},
      {"eval", "--process", "excursion"},
      {"eval", "--process", "bessel", "--N", "0", "--h", "1"},
      {"eval", "--process", "bessel", "--N", "2.5", "--h", "1"},
      {"eval", "--process", "bessel", "--h", "-1"},
      {"eval", "--process", "bessel", "--T", "0", "--h", "1"},
      {"eval", "--process", "bessel", "--h", "1", "--bogus", "3"},
      {"eval", "--process", "bessel", "--ell", "1"},
      {"table", "--process", "bessel", "--grid", "q", "0:1:3"},
      {"table", "--process", "bessel", "--grid", "h", "2:1:3"},
      {"table", "--process", "bessel", "--grid", "h", "0.5:1:1"},
      {"mc-compare", "--process", "bessel", "--stat", "L"},
      {"mc-compare", "--process", "bridge", "--N", "5"},
      {"eval", "--process", "general-ab-a", "--N", "2", "--start", "0.2,0.1", "--end", "0,1", "--ell", "1", "--r", "1"},
      {"eval", "--process", "bessel", "--h", "1", "--format", "xml"},
      {"eval", "--process", "bessel", "--h", "1", "--tol", "0"},
  };
  for (const auto& args : bad) {
    const auto o = invoke(args);
    EXPECT_EQ(o.status, kExitInvalid) << (args.empty() ? std::string("<none>") : args[0]) << " " << o.err;
    EXPECT_FALSE(o.err.empty());
  }
}

TEST(Eval, SinglePathHeightValue) {
  const auto o = invoke({"eval", "--process", "bessel", "--N", "1", "--T", "1", "--h", "1"});
  ASSERT_EQ(o.status, kExitOk) << o.err;
  const auto rows = csv_rows(o.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][0], "value");
  EXPECT_NEAR(parse_double(rows[1][0]), cdf_bessel_H(1, 1, 1).value, 1e-15);
}

TEST(Eval, GeneralProcessMatchesLibrary) {
  const auto o = invoke({"eval", "--process", "general-ab-a", "--N", "2", "--start", "-0.1,0.2", "--end", "0,0.3",
                         "--ell", "1", "--r", "1.2"});
  ASSERT_EQ(o.status, kExitOk) << o.err;
  const OrderedConfiguration a(Chamber::TypeA, {-0.1, 0.2}), b(Chamber::TypeA, {0.0, 0.3});
  const double ref = cdf_general(ProcessKind::fixed_ends(ProcessTag::GeneralABA, a, b), IntervalGeometry::make(-1, 1.2, 1),
                                 2, 1.0)
                         .value;
  EXPECT_EQ(parse_double(csv_rows(o.out)[1][0]), ref);
}

TEST(Table, MonotoneAndTendsToOne) {
  const auto o = invoke({"table", "--process", "bessel", "--N", "3", "--T", "1", "--grid", "h", "0.3:6:50"});
  ASSERT_EQ(o.status, kExitOk) << o.err;
  const auto rows = csv_rows(o.out);
  ASSERT_EQ(rows.size(), 51u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"arg", "value", "error_estimate"}));
  double prev = -1;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double v = parse_double(rows[i][1]);
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_NEAR(prev, 1.0, 1e-6);
  EXPECT_EQ(parse_double(rows[50][0]), 6.0);
}

TEST(Table, IndependentOfThreads) {
  auto args = std::vector<std::string>{"table", "--process", "motion", "--N", "3", "--ell", "1", "--grid", "r", "0.5:3:12"};
  const auto one = invoke(args);
  args.insert(args.end(), {"--threads", "4"});
  const auto four = invoke(args);
  ASSERT_EQ(one.status, kExitOk);
  EXPECT_EQ(one.out, four.out);
}

TEST(Json, RoundTripsValues) {
  const auto o = invoke({"table", "--process", "meander", "--N", "2", "--grid", "h", "0.5:2.5:5", "--format", "json"});
  ASSERT_EQ(o.status, kExitOk) << o.err;
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["command"], "table");
  EXPECT_EQ(j["process"], "meander");
  ASSERT_EQ(j["rows"].size(), 5u);
  for (const auto& row : j["rows"]) {
    const double h = row["arg"];
    EXPECT_EQ(row["value"].get<double>(), cdf_meander_H(2, 1.0, h).value);
  }
}

TEST(Moments, MatchClosedForm) {
  const auto o = invoke({"moments", "--m", "2,3,4"});
  ASSERT_EQ(o.status, kExitOk) << o.err;
  const auto rows = csv_rows(o.out);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(std::abs(parse_double(rows[i][3])), 1e-6);
  EXPECT_NEAR(parse_double(rows[1][1]), M_PI * M_PI / 6, 1e-14);
}

TEST(McCompare, DeterministicOutput) {
  const std::vector<std::string> args{"mc-compare", "--process", "meander", "--N", "2", "--samples", "800",
                                      "--steps", "64", "--seed", "9"};
  const auto a = invoke(args);
  ASSERT_EQ(a.status, kExitOk) << a.err;
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  const auto b = invoke(threaded);
  EXPECT_EQ(a.out, b.out);
  const auto rows = csv_rows(a.out);
  ASSERT_EQ(rows.size(), 21u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"arg", "analytic", "empirical", "ci_half_width", "inside_ci"}));
  EXPECT_NE(a.err.find("coverage"), std::string::npos);
}

TEST(SelfTest, Passes) {
  const auto o = invoke({"self-test"});
  EXPECT_EQ(o.status, kExitOk) << o.out << o.err;
}

TEST(OutFile, WritesOnce) {
  const std::string path = ::testing::TempDir() + "noncoll_cli_out.csv";
  const auto o = invoke({"eval", "--process", "meander", "--N", "2", "--h", "1.5", "--out", path});
  ASSERT_EQ(o.status, kExitOk) << o.err;
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), invoke({"eval", "--process", "meander", "--N", "2", "--h", "1.5"}).out);
  std::remove(path.c_str());
}

TEST(Binary, ExitStatuses) {
  const char* tool = std::getenv("NONCOLL_TOOL");
  if (tool == nullptr) GTEST_SKIP() << "NONCOLL_TOOL not set";
  const std::string t = tool;
  EXPECT_EQ(std::system((t + " eval --process bessel --N 2 --h 1 > /dev/null").c_str()), 0);
  const int bad = std::system((t + " eval --process bessel --N 2 --h -1 > /dev/null 2>&1").c_str());
  ASSERT_TRUE(WIFEXITED(bad));
  EXPECT_EQ(WEXITSTATUS(bad), kExitInvalid);
}

}  // namespace
