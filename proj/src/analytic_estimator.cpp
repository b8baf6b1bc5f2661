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

#include "repeater/analytic_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "repeater/errors.hpp"
#include "repeater/fixed_points.hpp"
#include "repeater/quadrature.hpp"

namespace repeater {

namespace {

constexpr double kSearchMargin = 1e-4;
constexpr double kSearchTolerance = 1e-5;

double sq(double x) { return x * x; }

void require_interval(Fidelity f0, Fidelity ft, const ErrorParams& err) {
  if (!(f0 < ft)) {
    throw std::invalid_argument("start fidelity must be below the target fidelity");
  }
  if (!feasible_for(f0, ft, err)) {
    throw InfeasibleError("purification gain is not positive on [F0, Ft]");
  }
}

// Integral of F'(F) - F over [f0, ft].
double gain_integral(double f0, double ft, const ErrorParams& err, double tol) {
  auto gain = [&err](double f) { return purify(Fidelity(f), err).fidelity.value() - f; };
  return numeric::adaptive_simpson(gain, f0, ft, tol * (ft - f0));
}

double log_acceptance_quadrature(double f0, double ft, const ErrorParams& err, double tol) {
  const double eta = err.eta();
  auto log_pf = [eta](double f) { return std::log(acceptance_probability(Fidelity(f), eta)); };
  return numeric::adaptive_simpson(log_pf, f0, ft, tol * (ft - f0));
}

// Returns the raw (un-ceiled) m~ for the chosen integral mode.
double raw_m_tilde(double f0, double ft, const ErrorParams& err, const AnalyticOptions& opts) {
  if (opts.integral_mode == IntegralMode::kClosedForm) {
    return closed_form::m_numerator(f0, ft, err.eps_r()) /
           closed_form::m_denominator(f0, ft, err.eps_g(), err.eps_r());
  }
  return sq(ft - f0) / gain_integral(f0, ft, err, opts.quad_tol);
}

double raw_log_pf_mean(double f0, double ft, const ErrorParams& err,
                       const AnalyticOptions& opts) {
  const double integral = opts.integral_mode == IntegralMode::kClosedForm
                              ? closed_form::log_acceptance_integral(f0, ft, err.eps_r())
                              : log_acceptance_quadrature(f0, ft, err, opts.quad_tol);
  return integral / (ft - f0);
}

}  // namespace

void AnalyticOptions::validate() const {
  if (!(quad_tol > 0.0 && quad_tol <= 1e-6)) {
    throw std::invalid_argument("quad_tol must lie in (0, 1e-6], got " + std::to_string(quad_tol));
  }
}

double avg_gain_g(Fidelity f0, Fidelity ft, const ErrorParams& err, const AnalyticOptions& opts) {
  opts.validate();
  require_interval(f0, ft, err);
  return (ft.value() - f0.value()) / raw_m_tilde(f0.value(), ft.value(), err, opts);
}

double m_tilde(Fidelity f0, Fidelity ft, const ErrorParams& err, const AnalyticOptions& opts) {
  opts.validate();
  require_interval(f0, ft, err);
  const double m = raw_m_tilde(f0.value(), ft.value(), err, opts);
  return opts.use_ceiling ? std::ceil(m) : m;
}

double pf_geometric_mean(Fidelity f0, Fidelity ft, const ErrorParams& err,
                         const AnalyticOptions& opts) {
  opts.validate();
  require_interval(f0, ft, err);
  return std::exp(raw_log_pf_mean(f0.value(), ft.value(), err, opts));
}

ScalingResult lambda_tilde(Fidelity f0, Fidelity ft, const ErrorParams& err,
                           double swap_success, const AnalyticOptions& opts) {
  opts.validate();
  if (!(swap_success > 0.0 && swap_success <= 1.0)) {
    throw std::domain_error("swap success probability must lie in (0, 1]");
  }
  ScalingResult result{
      .method = opts.integral_mode == IntegralMode::kClosedForm ? Method::kAnalyticClosedForm
                                                                : Method::kAnalytic,
      .estimate = std::nullopt,
  };
  if (!feasible_for(f0, ft, err)) return result;
  if (!(f0 < ft)) {
    throw std::invalid_argument("start fidelity must be below the target fidelity");
  }

  double m = raw_m_tilde(f0.value(), ft.value(), err, opts);
  if (opts.use_ceiling) m = std::ceil(m);
  const double log2_pf = raw_log_pf_mean(f0.value(), ft.value(), err, opts) / std::log(2.0);
  const double log2_b = m * (1.0 - std::log2(swap_success) - log2_pf);
  result.estimate = ScalingEstimate{.m = m, .b = std::exp2(log2_b), .lambda = log2_b + 1.0};
  return result;
}

Fidelity f_t_star(double eps_g) {
  if (!(eps_g >= 0.0 && eps_g < 1.0)) {
    throw std::domain_error("eps_g must lie in [0, 1), got " + std::to_string(eps_g));
  }
  const double radicand = sq(eps_g) + 0.15 * eps_g;
  const double value =
      (-1.16 * eps_g - 4.28 * std::sqrt(radicand) + 1.9) / (2.66 * eps_g + 1.9);
  if (!(value > 0.5)) {
    throw std::domain_error("optimal target fidelity falls below 1/2 at eps_g = " +
                            std::to_string(eps_g));
  }
  return Fidelity::from_computed(value);
}

Fidelity f_t_star_full(double eps_g, double eps_r) {
  if (!(eps_g >= 0.0 && eps_g < 1.0) || !(eps_r >= 0.0 && eps_r < 0.5)) {
    throw std::domain_error("error probabilities out of range");
  }
  const double g = eps_g;
  const double r = eps_r;
  const double radicand = 0.04 * sq(g) * sq(r) + sq(g) * r + 0.45 * sq(g) - 0.04 * g * sq(r) -
                          0.4 * g * r + 0.07 * g + 0.007 * sq(r) - 0.001 * r;
  if (radicand < 0.0) {
    throw std::domain_error("square-root argument of the full optimal-target form is negative");
  }
  const double numerator =
      8.31 * g * r - 0.40 * g - 3.35 * r - 2.0 * std::sqrt(radicand) + 0.61;
  const double denominator = 8.36 * g * r + 0.8 * g - 3.37 * r + 0.61;
  const double value = numerator / denominator;
  if (!(value > 0.5)) {
    throw std::domain_error("optimal target fidelity falls below 1/2");
  }
  return Fidelity::from_computed(value);
}

double lambda_simple(double eps_g) {
  if (!(eps_g >= 0.0)) throw std::domain_error("eps_g must be non-negative");
  return 3.0 + 14.0 * std::sqrt(eps_g) + 38.0 * eps_g;
}

OptimalTarget optimize_ft(const ErrorParams& err, double swap_success,
                          const AnalyticOptions& opts) {
  opts.validate();
  const FixedPointResult fp = find_fixed_points(err);
  if (!fp.feasible()) throw InfeasibleError("no fixed-point interval for these errors");
  const double lower = fp.interval->lower.value();
  const double upper = fp.interval->upper.value();

  // Smallest target whose swapped start clears the lower fixed point.
  const double eta_s = err.eta_s();
  const double start_floor = lower + kSearchMargin;
  const double contraction = (4.0 * start_floor - 1.0) / (4.0 * eta_s * eta_s - 1.0);
  const double target_floor = (3.0 * std::sqrt(contraction) + 1.0) / 4.0;

  const double lo = std::max(target_floor, lower + kSearchMargin);
  const double hi = upper - kSearchMargin;
  if (!(lo < hi)) {
    throw InfeasibleError("no target fidelity keeps the swapped start above the lower fixed point");
  }

  auto objective = [&](double ft) {
    const ProtocolParams p = ProtocolParams::swapped_from(Fidelity(ft), err, swap_success);
    const ScalingResult r = lambda_tilde(p.start, p.target, err, swap_success, opts);
    return r.feasible() ? r.estimate->lambda : std::numeric_limits<double>::infinity();
  };
  const numeric::Minimum best = numeric::golden_section_minimize(objective, lo, hi, kSearchTolerance);

  const ProtocolParams p = ProtocolParams::swapped_from(Fidelity(best.x), err, swap_success);
  return {
      .target = p.target,
      .start = p.start,
      .scaling = lambda_tilde(p.start, p.target, err, swap_success, opts),
  };
}

namespace closed_form {

namespace {

// 64r^6 - 192r^5 + 240r^4 - 160r^3 + 60r^2 - 12r + 1, i.e. (1 - 2r)^6.
double sextic(double r) {
  return 64 * std::pow(r, 6) - 192 * std::pow(r, 5) + 240 * std::pow(r, 4) -
         160 * std::pow(r, 3) + 60 * sq(r) - 12 * r + 1;
}

}  // namespace

double m_numerator(double f0, double ft, double eps_r) {
  const double r = eps_r;
  return (-16 * f0 + 16 * ft) * (-f0 + ft) * std::pow(2 * r - 1, 4) * sextic(r);
}

double m_denominator(double f0, double ft, double eps_g, double eps_r) {
  const double g = eps_g;
  const double r = eps_r;
  const double g2 = sq(g);
  const double g3 = g2 * g;
  const double g4 = g2 * g2;
  const double r2 = sq(r);

  const double poly = 2 * g4 * r2 - 2 * g4 * r + g4 - 8 * g3 * r2 + 8 * g3 * r - 4 * g3 +
                      22 * g2 * r2 - 22 * g2 * r + 10 * g2 - 28 * g * r2 + 28 * g * r -
                      12 * g + 12 * r2 - 12 * r - (2 * f0 + 2 * ft) * sq(2 * r - 1) + 5;
  const double polynomial_part = (-4 * f0 + 4 * ft) * sq(2 * r - 1) * sextic(r) * poly;

  const double weight = 2 * g2 * r2 - 2 * g2 * r + g2 - 4 * g * r2 + 4 * g * r - 2 * g + 2;
  const double odd = std::pow(2 * r - 1, 5);
  const double neg_sextic = -64.0 * std::pow(r, 6) + 192.0 * std::pow(r, 5) -
                            240.0 * std::pow(r, 4) + 160.0 * std::pow(r, 3) - 60.0 * r2 +
                            12.0 * r - 1.0;
  const double offset = 2.25 / sq(4 * r - 2);
  const double bracket =
      -2 * odd * weight * std::atan(1.5 / (4 * f0 * r - 2 * f0 - r + 0.5)) +
      2 * odd * weight * std::atan(1.5 / (4 * ft * r - 2 * ft - r + 0.5)) -
      neg_sextic * std::log(sq(ft - 0.25) + offset) +
      neg_sextic * std::log(sq(f0 - 0.25) + offset);
  const double rational_part =
      3 * sq(g - 1) * sq(2 * r - 1) * (2 * r2 - 2 * r + 1) * bracket;

  return polynomial_part + rational_part;
}

double log_acceptance_integral(double f0, double ft, double eps_r) {
  const double r = eps_r;
  const double k = 16 * sq(r) - 16 * r + 4;
  const double c = 3 - 6 * r;
  auto endpoint = [&](double fa, double sign) {
    const double argument =
        8 * r * (fa - 1) * (2 * fa + 1) * (r - 1) / 9 +
        (sq(r) + sq(r - 1)) * (3 * sq(fa) - 2 * fa * (fa - 1) + 5 * sq(fa - 1) / 3) / 3;
    return sign * (-fa) * std::log(argument) +
           sign * (2 * c * std::atan(c / ((fa - 0.25) * k)) / k +
                   0.25 * std::log(sq(c) / sq(k) + sq(fa - 0.25)));
  };
  return endpoint(f0, 1.0) + endpoint(ft, -1.0) - 2 * (ft - f0);
}

}  // namespace closed_form

}  // namespace repeater
