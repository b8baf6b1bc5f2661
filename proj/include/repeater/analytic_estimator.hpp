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

#include "repeater/core_maps.hpp"
#include "repeater/recursive_estimator.hpp"

namespace repeater {

enum class IntegralMode { kQuadrature, kClosedForm };

struct AnalyticOptions {
  bool use_ceiling = false;
  IntegralMode integral_mode = IntegralMode::kQuadrature;
  double quad_tol = 1e-10;

  /// Throws std::invalid_argument unless quad_tol is in (0, 1e-6].
  void validate() const;
};

/// Mean of F'(F) - F over [f0, ft]. Throws InfeasibleError when the interval
/// is not strictly inside the fixed points.
double avg_gain_g(Fidelity f0, Fidelity ft, const ErrorParams& err,
                  const AnalyticOptions& opts = {});

/// (ft - f0) / g, ceiled when opts.use_ceiling.
double m_tilde(Fidelity f0, Fidelity ft, const ErrorParams& err,
               const AnalyticOptions& opts = {});

/// exp of the mean of log P_F over [f0, ft].
double pf_geometric_mean(Fidelity f0, Fidelity ft, const ErrorParams& err,
                         const AnalyticOptions& opts = {});

/// B~ = (2 / (Ps P~_F))^m~ and lambda~ = log2 B~ + 1. Infeasibility is in-band.
ScalingResult lambda_tilde(Fidelity f0, Fidelity ft, const ErrorParams& err,
                           double swap_success = 1.0, const AnalyticOptions& opts = {});

/// Closed-form optimal target fidelity, neglecting the read-out error.
Fidelity f_t_star(double eps_g);

/// Read-out dependent variant. Throws std::domain_error when the radicand is
/// negative (e.g. eps_g = 0 with eps_r > 0).
Fidelity f_t_star_full(double eps_g, double eps_r);

/// 3 + 14 sqrt(eps_g) + 38 eps_g.
double lambda_simple(double eps_g);

struct OptimalTarget {
  Fidelity target;
  Fidelity start;
  ScalingResult scaling;
};

/// Numerically minimises lambda~ over the target fidelity, with the start tied
/// to the target by a two-link swap. Searches (F_l + 1e-4, F_u - 1e-4) by
/// golden section to 1e-5. Throws InfeasibleError when no target is feasible.
OptimalTarget optimize_ft(const ErrorParams& err, double swap_success = 1.0,
                          const AnalyticOptions& opts = {});

/// Closed-form pieces of the integrals behind m~ and P~_F.
namespace closed_form {

/// Numerator xi of m~ = xi / zeta.
double m_numerator(double f0, double ft, double eps_r);

/// Denominator zeta of m~ = xi / zeta.
double m_denominator(double f0, double ft, double eps_g, double eps_r);

/// Integral of log P_F over [f0, ft].
double log_acceptance_integral(double f0, double ft, double eps_r);

}  // namespace closed_form

}  // namespace repeater
