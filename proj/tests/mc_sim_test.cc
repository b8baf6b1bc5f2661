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

#include "repeater/mc_sim.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "repeater/analytic_estimator.hpp"
#include "test_oracles.hpp"

namespace repeater {
namespace {

using ::repeater::testing::NaiveSimulator;

// Expected level-0 links per level-L link: each level costs 2/Ps links per
// swapped link and 2/P_i per purification step.
double expected_consumption(const LevelProtocol& level, int levels) {
  double per_level = 2.0 / level.swap_success;
  for (double p : level.step_acceptance) per_level *= 2.0 / p;
  return std::pow(per_level, levels);
}

TEST(SimulateLevelsTest, CertainStepsAreDeterministic) {
  const LevelProtocol level{.swap_success = 1.0, .step_acceptance = {1.0, 1.0}};
  for (int levels = 1; levels <= 3; ++levels) {
    const SimReport r = simulate_levels(level, levels, 50, 7);
    const auto expected = static_cast<std::uint64_t>(std::pow(8.0, levels));
    ASSERT_EQ(r.histogram.size(), 1u);
    EXPECT_EQ(r.histogram.begin()->first, expected);
    EXPECT_EQ(r.histogram.begin()->second, 50u);
    EXPECT_EQ(r.mean_consumed, static_cast<double>(expected));
    EXPECT_EQ(r.std_error, 0.0);
  }
}

TEST(SimulateLevelsTest, SingleCoinFlipStepHasGeometricCost) {
  // One swap (2 links) per purification input, two inputs per attempt, and a
  // fair acceptance: P(cost = 4k) = 2^-k, mean 8.
  const LevelProtocol level{.swap_success = 1.0, .step_acceptance = {0.5}};
  const std::uint64_t trials = 20000;
  const SimReport r = simulate_levels(level, 1, trials, 11);
  EXPECT_NEAR(r.mean_consumed, 8.0, 3.0 * r.std_error);
  EXPECT_NEAR(r.std_error, std::sqrt(32.0 / trials), 0.1 * std::sqrt(32.0 / trials));
  for (const auto& [cost, count] : r.histogram) EXPECT_EQ(cost % 4, 0u);
  for (std::uint64_t k = 1; k <= 4; ++k) {
    const double p = std::pow(0.5, static_cast<double>(k));
    const double sd = std::sqrt(p * (1 - p) / trials);
    const auto it = r.histogram.find(4 * k);
    ASSERT_NE(it, r.histogram.end());
    EXPECT_NEAR(static_cast<double>(it->second) / trials, p, 4.0 * sd) << "k=" << k;
  }
}

TEST(SimulateLevelsTest, AgreesWithPerLinkSimulation) {
  const LevelProtocol level{.swap_success = 0.7, .step_acceptance = {0.6, 0.8}};
  const int levels = 2;
  const std::uint64_t trials = 4000;
  const SimReport fast = simulate_levels(level, levels, trials, 3);

  NaiveSimulator naive(level.step_acceptance, level.swap_success, 99);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const double c = static_cast<double>(naive.build(levels));
    sum += c;
    sum_sq += c * c;
  }
  const double mean = sum / trials;
  const double se = std::sqrt((sum_sq / trials - mean * mean) / (trials - 1));

  const double combined = std::hypot(se, fast.std_error);
  EXPECT_NEAR(fast.mean_consumed, mean, 4.0 * combined);
  EXPECT_NEAR(fast.std_error, se, 0.2 * se);
  const double exact = expected_consumption(level, levels);
  EXPECT_NEAR(fast.mean_consumed, exact, 4.0 * fast.std_error);
  EXPECT_NEAR(mean, exact, 4.0 * se);
}

TEST(SimulateLevelsTest, SeedDeterminism) {
  const LevelProtocol level{.swap_success = 0.9, .step_acceptance = {0.7, 0.75, 0.8}};
  const SimReport a = simulate_levels(level, 2, 500, 42);
  const SimReport b = simulate_levels(level, 2, 500, 42);
  EXPECT_EQ(a, b);
  const SimReport c = simulate_levels(level, 2, 500, 43);
  EXPECT_NE(a.histogram, c.histogram);
}

TEST(SimulateLevelsTest, EveryTrialConsumesAtLeastTwoToTheL) {
  const LevelProtocol level{.swap_success = 1.0, .step_acceptance = {}};
  for (int levels = 1; levels <= 4; ++levels) {
    const SimReport r = simulate_levels(level, levels, 10, 1);
    EXPECT_EQ(r.histogram.begin()->first, 1u << levels);
  }
  const LevelProtocol noisy{.swap_success = 0.8, .step_acceptance = {0.9}};
  const SimReport r = simulate_levels(noisy, 3, 300, 5);
  EXPECT_GE(r.histogram.begin()->first, 8u);
}

TEST(SimulateLevelsTest, RunawayTrialsAreAborted) {
  const LevelProtocol level{.swap_success = 1.0, .step_acceptance = {1e-4, 1e-4}};
  const SimReport r = simulate_levels(level, 2, 20, 8);
  EXPECT_EQ(r.aborted_trials, 20u);
  EXPECT_EQ(r.completed_trials, 0u);
  EXPECT_TRUE(r.histogram.empty());
}

TEST(SimulateLevelsTest, RejectsBadConfiguration) {
  const LevelProtocol level{.swap_success = 1.0, .step_acceptance = {0.5}};
  EXPECT_THROW(simulate_levels(level, 0, 10, 1), std::invalid_argument);
  EXPECT_THROW(simulate_levels(level, 1, 0, 1), std::invalid_argument);
  EXPECT_THROW(simulate_levels({.swap_success = 0.0, .step_acceptance = {}}, 1, 1, 1),
               std::invalid_argument);
  EXPECT_THROW(simulate_levels({.swap_success = 1.0, .step_acceptance = {1.5}}, 1, 1, 1),
               std::invalid_argument);
}

TEST(SimulateNestedTest, NoisyProtocolIsUnbiased) {
  const ErrorParams err(0.01, 0.01);
  for (int levels : {1, 2}) {
    const SimConfig cfg{.levels = levels,
                        .protocol = ProtocolParams::swapped_from(f_t_star(0.01), err),
                        .trials = 10000,
                        .seed = 2026};
    const SimReport r = simulate_nested(cfg);
    const double b = b_recursive(cfg.protocol);
    EXPECT_DOUBLE_EQ(r.analytic_t, std::pow(2.0 * b, levels));
    EXPECT_NEAR(r.mean_consumed, r.analytic_t, 3.0 * r.std_error) << "L=" << levels;
    EXPECT_EQ(r.completed_trials, 10000u);
  }
}

TEST(WriteHistogramTest, CsvLayout) {
  SimReport r;
  r.histogram = {{8, 3}, {16, 1}};
  std::ostringstream out;
  write_histogram_csv(out, r);
  EXPECT_EQ(out.str(), "consumed_pairs,count\n8,3\n16,1\n");
}

}  // namespace
}  // namespace repeater
