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

#include <optional>
#include <vector>

#include "repeater/core_maps.hpp"

namespace repeater {

struct FixedPoints {
  Fidelity lower;
  Fidelity upper;
  double lower_residual;  // |F'(F_l) - F_l|
  double upper_residual;
};

/// Outcome of locating the fixed points of the error-modeled map.
struct FixedPointResult {
  std::optional<FixedPoints> interval;  // empty: purification is infeasible
  std::vector<double> roots;            // every crossing found on (1/4, 1]

  bool feasible() const { return interval.has_value(); }
};

/// Scans (1/4, 1] in steps of 1e-3 for sign changes of F'(F) - F, refines each
/// by bisection to 1e-12, and keeps the two largest roots when the map gains
/// strictly between them. A tangency counts as infeasible.
FixedPointResult find_fixed_points(const ErrorParams& err);

/// True iff fixed points exist and F_l < f0 and ft < F_u.
bool feasible_for(Fidelity f0, Fidelity ft, const ErrorParams& err);

/// Same check against an already computed result.
bool feasible_for(Fidelity f0, Fidelity ft, const FixedPointResult& fixed_points);

}  // namespace repeater
