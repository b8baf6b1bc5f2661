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
#include <span>
#include <vector>

#include "repeater/core_maps.hpp"

namespace repeater {

/// One nesting level: swap two links of fidelity `target`, landing at `start`,
/// then purify back up to `target`.
struct ProtocolParams {
  Fidelity target;
  Fidelity start;
  double swap_success = 1.0;
  ErrorParams err = ErrorParams::none();

  /// Ties `start` to `target` through a two-link swap with absorbed gate errors.
  static ProtocolParams swapped_from(Fidelity target, const ErrorParams& err,
                                     double swap_success = 1.0);
};

struct PurificationStep {
  Fidelity input;
  Fidelity output;
  double acceptance;
};

struct PurificationTrace {
  std::vector<PurificationStep> steps;

  int m() const { return static_cast<int>(steps.size()); }
  std::vector<double> acceptances() const;
};

enum class Method { kRecursive, kAnalytic, kAnalyticClosedForm };

const char* to_string(Method method);

struct ScalingEstimate {
  double m;       // purification steps per level (real for analytic estimates)
  double b;       // pairs consumed per purified output at one level
  double lambda;  // log2(b) + 1
};

struct ScalingResult {
  Method method;
  std::optional<ScalingEstimate> estimate;  // empty when infeasible

  bool feasible() const { return estimate.has_value(); }
};

/// Iterates purify() from p.start until the first output at or above
/// p.target, recording every step. Throws InfeasibleError when (start, target)
/// is not inside the fixed-point interval and NonConvergenceError after 10^6
/// steps.
PurificationTrace purification_trace(const ProtocolParams& p);

/// 2^m / (Ps^m * prod P_i) for the given per-step acceptance probabilities.
double pairs_per_level(std::span<const double> acceptances, double swap_success);

double b_recursive(const ProtocolParams& p);

/// Feasibility is reported in-band; no exception for infeasible parameters.
ScalingResult lambda_recursive(const ProtocolParams& p);

/// D^lambda base-level links for a path of `links` hops.
double total_resources(double links, double lambda);

/// Average rate between nodes `distance` apart, given the neighbour rate at
/// `neighbor_distance`.
double rate(double distance, double neighbor_distance, double neighbor_rate, double lambda);

}  // namespace repeater
