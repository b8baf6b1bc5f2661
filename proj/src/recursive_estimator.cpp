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

#include "repeater/recursive_estimator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "repeater/errors.hpp"
#include "repeater/fixed_points.hpp"

namespace repeater {

namespace {

constexpr int kMaxSteps = 1'000'000;

void check_probability(double p, const char* what) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in (0, 1], got " + std::to_string(p));
  }
}

}  // namespace

ProtocolParams ProtocolParams::swapped_from(Fidelity target, const ErrorParams& err,
                                            double swap_success) {
  return {
      .target = target,
      .start = swap_fidelity(target, 2, err, SwapModel::kAbsorbed),
      .swap_success = swap_success,
      .err = err,
  };
}

std::vector<double> PurificationTrace::acceptances() const {
  std::vector<double> out;
  out.reserve(steps.size());
  for (const PurificationStep& step : steps) out.push_back(step.acceptance);
  return out;
}

const char* to_string(Method method) {
  switch (method) {
    case Method::kRecursive:
      return "recursive";
    case Method::kAnalytic:
      return "analytic";
    case Method::kAnalyticClosedForm:
      return "closed-form";
  }
  return "unknown";
}

PurificationTrace purification_trace(const ProtocolParams& p) {
  if (!feasible_for(p.start, p.target, p.err)) {
    throw InfeasibleError("start/target fidelities lie outside the purification interval");
  }
  PurificationTrace trace;
  Fidelity f = p.start;
  while (f < p.target) {
    if (trace.m() >= kMaxSteps) {
      throw NonConvergenceError("purification did not reach the target in 10^6 steps");
    }
    const PurifyResult r = purify(f, p.err);
    trace.steps.push_back({.input = f, .output = r.fidelity, .acceptance = r.acceptance});
    f = r.fidelity;
  }
  return trace;
}

double pairs_per_level(std::span<const double> acceptances, double swap_success) {
  check_probability(swap_success, "swap success probability");
  double log2_b = 0.0;
  for (double p : acceptances) {
    check_probability(p, "acceptance probability");
    log2_b += 1.0 - std::log2(swap_success) - std::log2(p);
  }
  return std::exp2(log2_b);
}

double b_recursive(const ProtocolParams& p) {
  const PurificationTrace trace = purification_trace(p);
  const std::vector<double> acc = trace.acceptances();
  return pairs_per_level(acc, p.swap_success);
}

ScalingResult lambda_recursive(const ProtocolParams& p) {
  ScalingResult result{.method = Method::kRecursive, .estimate = std::nullopt};
  if (!feasible_for(p.start, p.target, p.err)) return result;
  const PurificationTrace trace = purification_trace(p);
  const std::vector<double> acc = trace.acceptances();
  const double b = pairs_per_level(acc, p.swap_success);
  result.estimate = ScalingEstimate{
      .m = static_cast<double>(trace.m()),
      .b = b,
      .lambda = std::log2(b) + 1.0,
  };
  return result;
}

double total_resources(double links, double lambda) {
  if (!(links >= 1.0)) throw std::domain_error("path length must be at least one link");
  return std::pow(links, lambda);
}

double rate(double distance, double neighbor_distance, double neighbor_rate, double lambda) {
  if (!(neighbor_distance > 0.0) || !(distance >= neighbor_distance)) {
    throw std::domain_error("rate requires distance >= neighbour distance > 0");
  }
  if (!(neighbor_rate > 0.0)) throw std::domain_error("neighbour rate must be positive");
  return neighbor_rate * std::pow(neighbor_distance, lambda - 1.0) *
         std::pow(distance, 1.0 - lambda);
}

}  // namespace repeater
