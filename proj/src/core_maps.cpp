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

#include "repeater/core_maps.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace repeater {

namespace {

std::string str(double v) { return std::to_string(v); }

// Bell-diagonal weights of a Werner pair, grouped the way the recurrence
// formulas use them.
struct WernerTerms {
  double same;       // F^2 + q^2
  double total;      // F^2 + 2Fq + 5(1-F)^2/9
  double mixed;      // Fq + q^2
  double phase;      // Fq
  double bit;        // q^2
};

WernerTerms werner_terms(double f) {
  const double q = (1.0 - f) / 3.0;
  return {
      .same = f * f + q * q,
      .total = f * f + 2.0 * f * q + 5.0 / 9.0 * (1.0 - f) * (1.0 - f),
      .mixed = f * q + q * q,
      .phase = f * q,
      .bit = q * q,
  };
}

}  // namespace

Fidelity::Fidelity(double value) : value_(value) {
  if (!(value > 0.0 && value <= 1.0)) {
    throw std::domain_error("fidelity must lie in (0, 1], got " + str(value));
  }
}

Fidelity Fidelity::from_computed(double raw) {
  if (std::isnan(raw)) throw std::domain_error("computed fidelity is NaN");
  if (raw > 1.0) {
    if (raw - 1.0 > kClampTolerance) {
      throw std::domain_error("computed fidelity " + str(raw) + " exceeds 1");
    }
    return Fidelity(1.0, true);
  }
  if (raw <= 0.0) {
    if (-raw > kClampTolerance) {
      throw std::domain_error("computed fidelity " + str(raw) + " is negative");
    }
    return Fidelity(std::numeric_limits<double>::min(), true);
  }
  return Fidelity(raw, false);
}

ErrorParams::ErrorParams(double eps_g, double eps_r, PauliWeights weights,
                         std::optional<double> eta_s)
    : eps_g_(eps_g), eps_r_(eps_r), weights_(weights), eta_s_(eta_s.value_or(1.0 - eps_r)) {
  if (!(eps_g >= 0.0 && eps_g < 1.0)) {
    throw std::invalid_argument("eps_g must lie in [0, 1), got " + str(eps_g));
  }
  if (!(eps_r >= 0.0 && eps_r < 0.5)) {
    throw std::invalid_argument("eps_r must lie in [0, 0.5), got " + str(eps_r));
  }
  if (weights.x < 0.0 || weights.y < 0.0 || weights.z < 0.0 ||
      std::abs(weights.x + weights.y + weights.z - 1.0) > 1e-12) {
    throw std::invalid_argument("Pauli weights must be non-negative and sum to 1");
  }
  if (!(eta_s_ > 0.5 && eta_s_ <= 1.0)) {
    throw std::invalid_argument("eta_s must lie in (0.5, 1], got " + str(eta_s_));
  }
}

Fidelity purify_ideal(Fidelity f) {
  const WernerTerms w = werner_terms(f.value());
  return Fidelity::from_computed(w.same / w.total);
}

double acceptance_probability(Fidelity f, double eta) {
  if (!(eta > 0.5 && eta <= 1.0)) {
    throw std::domain_error("eta must lie in (0.5, 1], got " + str(eta));
  }
  const WernerTerms w = werner_terms(f.value());
  const double agree = eta * eta + (1.0 - eta) * (1.0 - eta);
  const double flip = eta * (1.0 - eta);
  return w.total * agree + w.mixed * 8.0 * flip;
}

PurifyResult purify(Fidelity f, const ErrorParams& err) {
  const WernerTerms w = werner_terms(f.value());
  const double eta = err.eta();
  const double eg = err.eps_g();
  const double keep = (1.0 - eg) * (1.0 - eg);
  const double agree = eta * eta + (1.0 - eta) * (1.0 - eta);
  const double flip = eta * (1.0 - eta);
  const PauliWeights& p = err.weights();

  const double gate_term = 2.0 * ((2.0 * eg - eg * eg) / keep) *
                           (p.z * w.phase + (p.x + p.y) * w.bit);
  const double numerator = w.same * agree + w.mixed * 2.0 * flip + gate_term;
  const double accept = w.total * agree + w.mixed * 8.0 * flip;
  return {Fidelity::from_computed(numerator / (accept / keep)), accept};
}

Fidelity purify_dur(Fidelity f, const DurParams& params) {
  if (!(params.eta > 0.5 && params.eta <= 1.0)) {
    throw std::domain_error("eta must lie in (0.5, 1], got " + str(params.eta));
  }
  if (!(params.p2 > 0.0 && params.p2 <= 1.0)) {
    throw std::domain_error("p2 must lie in (0, 1], got " + str(params.p2));
  }
  const WernerTerms w = werner_terms(f.value());
  const double eta = params.eta;
  const double agree = eta * eta + (1.0 - eta) * (1.0 - eta);
  const double flip = eta * (1.0 - eta);
  const double noise = (1.0 - params.p2 * params.p2) / (params.p2 * params.p2);

  const double numerator = w.same * agree + w.mixed * 2.0 * flip + noise / 8.0;
  const double denominator = w.total * agree + w.mixed * 8.0 * flip + noise / 2.0;
  return Fidelity::from_computed(numerator / denominator);
}

Fidelity swap_fidelity(Fidelity f, int links, const ErrorParams& err, SwapModel model) {
  if (links < 2) {
    throw std::domain_error("swapping joins at least 2 links, got " + std::to_string(links));
  }
  if (!(f.value() > 0.25)) {
    throw std::domain_error("swap input fidelity must exceed 1/4, got " + str(f.value()));
  }
  const double eta = model == SwapModel::kAbsorbed ? err.eta_s() : err.eta();
  const double joins = links - 1;
  double contraction = std::pow((4.0 * eta * eta - 1.0) / 3.0, joins) *
                       std::pow((4.0 * f.value() - 1.0) / 3.0, links);
  if (model == SwapModel::kGateError) {
    contraction *= std::pow(1.0 - err.eps_g(), 3.0 * joins);
  }
  return Fidelity::from_computed(0.25 * (1.0 + 3.0 * contraction));
}

Fidelity decay(Fidelity f0, double t, double t2) {
  if (!(t2 > 0.0)) throw std::domain_error("T2 must be positive, got " + str(t2));
  if (!(t >= 0.0)) throw std::domain_error("elapsed time must be non-negative, got " + str(t));
  const double x = t / t2;
  return Fidelity::from_computed(f0.value() * std::exp(-x * x));
}

}  // namespace repeater
