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

#include "repeater/fixed_points.hpp"

#include <cmath>

namespace repeater {

namespace {

constexpr int kScanSteps = 750;  // (1/4, 1] at 1e-3
constexpr double kRootTolerance = 1e-12;
constexpr double kZeroGain = 1e-14;

double gain(double f, const ErrorParams& err) {
  return purify(Fidelity(f), err).fidelity.value() - f;
}

double bisect(double lo, double hi, double h_lo, const ErrorParams& err) {
  while (hi - lo > kRootTolerance) {
    const double mid = 0.5 * (lo + hi);
    const double h_mid = gain(mid, err);
    if (h_mid == 0.0) return mid;
    if ((h_mid > 0.0) == (h_lo > 0.0)) {
      lo = mid;
      h_lo = h_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

FixedPointResult find_fixed_points(const ErrorParams& err) {
  FixedPointResult result;
  std::vector<double>& roots = result.roots;

  double prev_x = 0.25 + 1.0 / 1000.0;
  double prev_h = gain(prev_x, err);
  if (std::abs(prev_h) <= kZeroGain) roots.push_back(prev_x);

  for (int i = 2; i <= kScanSteps; ++i) {
    const double x = 0.25 + i / 1000.0;
    const double h = gain(x, err);
    if (std::abs(h) <= kZeroGain) {
      roots.push_back(x);
    } else if (std::abs(prev_h) > kZeroGain && (h > 0.0) != (prev_h > 0.0)) {
      roots.push_back(bisect(prev_x, x, prev_h, err));
    }
    prev_x = x;
    prev_h = h;
  }

  if (roots.size() < 2) return result;
  const double lower = roots[roots.size() - 2];
  const double upper = roots.back();
  // Gain must be positive strictly between the two largest roots.
  if (!(upper - lower > kRootTolerance) || !(gain(0.5 * (lower + upper), err) > 0.0)) {
    return result;
  }
  result.interval = FixedPoints{
      .lower = Fidelity(lower),
      .upper = Fidelity(upper),
      .lower_residual = std::abs(gain(lower, err)),
      .upper_residual = std::abs(gain(upper, err)),
  };
  return result;
}

bool feasible_for(Fidelity f0, Fidelity ft, const FixedPointResult& fixed_points) {
  if (!fixed_points.feasible()) return false;
  const FixedPoints& fp = *fixed_points.interval;
  return fp.lower < f0 && ft < fp.upper;
}

bool feasible_for(Fidelity f0, Fidelity ft, const ErrorParams& err) {
  return feasible_for(f0, ft, find_fixed_points(err));
}

}  // namespace repeater
