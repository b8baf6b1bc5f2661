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

#pragma once

#include <functional>

namespace repeater::numeric {

/// Adaptive Simpson quadrature of f over [a, b] with absolute tolerance `tol`
/// (Richardson-corrected). Recursion depth is capped at 50.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol);

struct Minimum {
  double x;
  double value;
};

/// Golden-section search for the minimum of a unimodal f on [a, b]; stops when
/// the bracket is narrower than `tol`.
Minimum golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                double tol);

}  // namespace repeater::numeric
