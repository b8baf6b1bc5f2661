// Copyright 2026 The Repeater Scaling Authors
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

#include "repeater/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "repeater/csv.hpp"

namespace repeater::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// Value of `column` in the first data row.
std::string cell(const std::string& csv, const std::string& column, std::size_t row = 1) {
  const auto rows = lines(csv);
  const auto header = fields(rows.at(0));
  const auto values = fields(rows.at(row));
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == column) return values.at(i);
  }
  ADD_FAILURE() << "no column " << column;
  return {};
}

std::string read(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(CsvFormatTest, ShortestRoundTrip) {
  EXPECT_EQ(csv::format(0.1), "0.1");
  EXPECT_EQ(csv::format(1.0), "1");
  EXPECT_EQ(csv::format(0.1 + 0.2), "0.30000000000000004");
  for (double v : {1.0 / 3.0, 2.5e-3, 6.02214076e23, -1e-300}) {
    EXPECT_EQ(std::stod(csv::format(v)), v);
  }
  EXPECT_EQ(csv::format(std::optional<double>()), "");
  EXPECT_EQ(csv::escape("a,b"), "\"a,b\"");
  EXPECT_EQ(csv::escape("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(CliTest, LambdaAnalyticForSiliconVacancy) {
  const Result r = invoke(
      {"lambda", "--eps-g", "5e-4", "--eps-r", "1e-4", "--ft", "auto", "--method", "analytic"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(lines(r.out).front(), "method,eps_g,eps_r,ft,f0,m,b,lambda,feasible");
  EXPECT_NEAR(std::stod(cell(r.out, "lambda")), 3.49, 0.05);
  EXPECT_EQ(cell(r.out, "feasible"), "true");
}

TEST(CliTest, LambdaMethodsAndTargets) {
  const Result rec = invoke({"lambda", "--eps-g", "1e-3", "--eps-r", "1e-3", "--method",
                             "recursive"});
  ASSERT_EQ(rec.code, kExitOk);
  EXPECT_EQ(cell(rec.out, "method"), "recursive");
  EXPECT_EQ(std::stod(cell(rec.out, "m")), std::floor(std::stod(cell(rec.out, "m"))));

  const Result closed = invoke({"lambda", "--eps-g", "1e-3", "--eps-r", "1e-3", "--method",
                                "closed-form", "--ceiling"});
  ASSERT_EQ(closed.code, kExitOk);
  EXPECT_EQ(cell(closed.out, "method"), "closed-form");

  const Result fixed = invoke({"lambda", "--eps-g", "1e-3", "--eps-r", "1e-3", "--ft", "0.95"});
  ASSERT_EQ(fixed.code, kExitOk);
  EXPECT_EQ(cell(fixed.out, "ft"), "0.95");

  const Result opt = invoke({"lambda", "--eps-g", "1e-3", "--eps-r", "1e-3", "--ft", "opt"});
  ASSERT_EQ(opt.code, kExitOk);
  EXPECT_LE(std::stod(cell(opt.out, "lambda")), std::stod(cell(fixed.out, "lambda")));
}

TEST(CliTest, StrictTurnsInfeasibilityIntoExitThree) {
  const std::vector<std::string> args = {"lambda", "--eps-g", "0.05", "--eps-r", "0"};
  const Result lenient = invoke(args);
  EXPECT_EQ(lenient.code, kExitOk);
  EXPECT_EQ(cell(lenient.out, "feasible"), "false");
  EXPECT_EQ(cell(lenient.out, "lambda"), "");

  std::vector<std::string> strict = args;
  strict.push_back("--strict");
  EXPECT_EQ(invoke(strict).code, kExitInfeasible);
  strict.pop_back();
  strict.insert(strict.begin(), "--strict");
  EXPECT_EQ(invoke(strict).code, kExitInfeasible);
}

TEST(CliTest, ArgumentErrorsExitTwoWithUsage) {
  const Result unknown = invoke({"lambda", "--eps-g", "1e-3", "--eps-r", "1e-3", "--bogus"});
  EXPECT_EQ(unknown.code, kExitUsage);
  EXPECT_NE(unknown.err.find("Usage"), std::string::npos);
  EXPECT_TRUE(unknown.out.empty());

  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"lambda", "--eps-g", "1e-3"}).code, kExitUsage);
  EXPECT_EQ(invoke({"lambda", "--eps-g", "x", "--eps-r", "0"}).code, kExitUsage);
  EXPECT_EQ(invoke({"lambda", "--eps-g", "1e-3", "--eps-r", "0", "--ft", "1.5"}).code, kExitUsage);
  EXPECT_EQ(invoke({"lambda", "--eps-g", "1e-3", "--eps-r", "0", "--method", "magic"}).code,
            kExitUsage);
  EXPECT_EQ(invoke({"sweep", "--quantity", "lambda", "--eps-r", "0:0.1", "--eps-g", "0:0.1:2"}).code,
            kExitUsage);
  EXPECT_EQ(invoke({"fstar", "--eps-g", "0.001", "--full"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(CliTest, FstarValues) {
  const Result zero = invoke({"fstar", "--eps-g", "0"});
  ASSERT_EQ(zero.code, kExitOk);
  EXPECT_EQ(std::stod(cell(zero.out, "ft_star")), 1.0);
  const Result full = invoke({"fstar", "--eps-g", "0", "--full", "--eps-r", "0"});
  ASSERT_EQ(full.code, kExitOk);
  EXPECT_EQ(cell(full.out, "form"), "full");
  EXPECT_NEAR(std::stod(cell(full.out, "ft_star")), 1.0, 1e-15);
}

TEST(CliTest, SweepGridShapeAndFlags) {
  const std::vector<std::string> args = {"sweep", "--quantity", "lambda-tilde", "--eps-r",
                                         "0:0.05:6", "--eps-g", "0:0.05:6"};
  const Result r = invoke(args);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 37u);
  EXPECT_EQ(rows[0], "eps_r,eps_g,value,feasible");
  int infeasible = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = fields(rows[i]);
    ASSERT_EQ(f.size(), 4u) << rows[i];
    if (f[3] == "false") {
      ++infeasible;
      EXPECT_EQ(f[2], "");
    }
  }
  EXPECT_GT(infeasible, 0);
  EXPECT_EQ(invoke(args).out, r.out);
}

TEST(CliTest, SweepClampCapsAtTwenty) {
  const Result raw = invoke({"sweep", "--quantity", "lambda-tilde", "--eps-r", "0:0:2", "--eps-g",
                             "0.02:0.02:2"});
  ASSERT_EQ(raw.code, kExitOk);
  ASSERT_GT(std::stod(cell(raw.out, "value")), 20.0);
  const Result clamped = invoke({"sweep", "--quantity", "lambda-tilde", "--eps-r", "0:0:2",
                                 "--eps-g", "0.02:0.02:2", "--clamp"});
  EXPECT_EQ(std::stod(cell(clamped.out, "value")), 20.0);
}

TEST(CliTest, PlatformsFromFlagAndEnvironment) {
  const Result r = invoke({"platforms", "--data", REPEATER_TEST_DATA});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0],
            "name,eps_g,eps_r,ft_star,lambda_tilde,lambda_recursive,d_star,feasible");

  const auto alt = std::filesystem::temp_directory_path() / "repeater_cli_platforms.json";
  std::ofstream(alt) << R"({"platforms": [{"name": "only", "eps_g": 0.001, "eps_r": 0.001,
                           "rate_hz": 10, "t2_s": 1}]})";
  ::setenv("REPEATER_PLATFORMS", alt.c_str(), 1);
  const Result env = invoke({"platforms"});
  ::unsetenv("REPEATER_PLATFORMS");
  ASSERT_EQ(env.code, kExitOk);
  EXPECT_EQ(lines(env.out).size(), 2u);
  EXPECT_EQ(cell(env.out, "name"), "only");

  EXPECT_EQ(invoke({"platforms"}).out, r.out);
  EXPECT_EQ(invoke({"platforms", "--data", "/nonexistent.json"}).code, kExitUsage);
}

TEST(CliTest, PurifyCurveColumns) {
  const Result r = invoke({"purify-curve", "--eps-g", "0.01", "--eps-r", "0.01", "--iterations",
                           "4", "--points", "4"});
  ASSERT_EQ(r.code, kExitOk);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0], "F,F_after_1,F_after_k");
  EXPECT_EQ(cell(r.out, "F", 4), "1");
  EXPECT_LT(std::stod(cell(r.out, "F_after_k", 4)), std::stod(cell(r.out, "F_after_1", 4)));
}

TEST(CliTest, DstarWithAndWithoutExponent) {
  const Result r = invoke({"dstar", "--rate", "1", "--t2", "2.1", "--eps-g", "5e-4", "--eps-r",
                           "1e-4", "--lambda", "4.06"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NEAR(std::stod(cell(r.out, "d_star")), 1.06, 0.05);
  const Result own = invoke({"dstar", "--rate", "39", "--t2", "1", "--eps-g", "3.5e-4",
                             "--eps-r", "4e-4", "--floor"});
  ASSERT_EQ(own.code, kExitOk);
  EXPECT_EQ(cell(own.out, "d_star"), "2");
}

TEST(CliTest, SimulateWritesSummaryAndHistogram) {
  const auto hist = std::filesystem::temp_directory_path() / "repeater_cli_hist.csv";
  const std::vector<std::string> args = {"simulate", "--levels", "1", "--eps-g", "0.01",
                                         "--eps-r", "0.01", "--trials", "200", "--seed", "9",
                                         "--histogram", hist.string()};
  const Result r = invoke(args);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(cell(r.out, "completed_trials"), "200");
  EXPECT_EQ(lines(read(hist)).front(), "consumed_pairs,count");
  const std::string first_hist = read(hist);
  EXPECT_EQ(invoke(args).out, r.out);
  EXPECT_EQ(read(hist), first_hist);

  const Result inline_hist = invoke({"simulate", "--levels", "1", "--eps-g", "0.01", "--eps-r",
                                     "0.01", "--trials", "20"});
  EXPECT_NE(inline_hist.out.find("\nconsumed_pairs,count\n"), std::string::npos);
}

TEST(CliTest, OutFlagWritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "repeater_cli_out.csv";
  const Result r = invoke({"fstar", "--eps-g", "0.001", "--out", path.string()});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(lines(read(path)).front(), "eps_g,eps_r,form,ft_star,feasible");
}

}  // namespace
}  // namespace repeater::cli
