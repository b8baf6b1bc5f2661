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

#include "repeater/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

namespace repeater::numeric {
namespace {

TEST(AdaptiveSimpsonTest, PolynomialsAreExact) {
  EXPECT_NEAR(adaptive_simpson([](double x) { return x * x * x; }, 0.0, 2.0, 1e-12), 4.0, 1e-14);
  EXPECT_NEAR(adaptive_simpson([](double) { return 3.0; }, 1.0, 1.5, 1e-12), 1.5, 1e-15);
}

TEST(AdaptiveSimpsonTest, SmoothAndPeakedIntegrands) {
  EXPECT_NEAR(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-12),
              2.0, 1e-11);
  EXPECT_NEAR(adaptive_simpson([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0, 1e-10),
              2.0 / 1e-2 * std::atan(1.0 / 1e-2), 1e-8);
}

TEST(AdaptiveSimpsonTest, EmptyIntervalIsZero) {
  EXPECT_EQ(adaptive_simpson([](double x) { return x; }, 0.3, 0.3, 1e-12), 0.0);
}

TEST(GoldenSectionTest, FindsInteriorMinimum) {
  const Minimum m = golden_section_minimize([](double x) { return (x - 0.3) * (x - 0.3); },
                                            0.0, 1.0, 1e-9);
  EXPECT_NEAR(m.x, 0.3, 1e-8);
  EXPECT_NEAR(m.value, 0.0, 1e-15);
}

TEST(GoldenSectionTest, BoundaryMinimum) {
  const Minimum m = golden_section_minimize([](double x) { return x; }, 0.2, 0.9, 1e-9);
  EXPECT_NEAR(m.x, 0.2, 1e-8);
}

}  // namespace
}  // namespace repeater::numeric
