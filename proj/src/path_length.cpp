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

#include "repeater/path_length.hpp"

#include <cmath>
#include <stdexcept>

namespace repeater {

void LinkBudget::validate() const {
  if (!(rate > 0.0)) throw std::invalid_argument("entanglement rate must be positive");
  if (!(t2 > 0.0)) throw std::invalid_argument("T2 must be positive");
  if (!(lambda >= 1.0)) throw std::invalid_argument("lambda must be at least 1");
  if (!(f_lower.value() > 0.5 && f_lower < ft_star)) {
    throw std::invalid_argument("budget requires 1/2 < F_l < Ft*");
  }
  if (!(eta > 0.5 && eta <= 1.0)) throw std::invalid_argument("eta must lie in (0.5, 1]");
}

double decohered_swap_fidelity(double links, const LinkBudget& b) {
  b.validate();
  const double storage = std::pow(links, b.lambda) / b.rate;
  const double x = storage / b.t2;
  const double decayed = b.ft_star.value() * std::exp(-x * x);
  // Two-link swap of the decayed pair; evaluated on raw doubles because the
  // decayed fidelity may drop below 1/4.
  const double c = (4.0 * decayed - 1.0) / 3.0;
  return 0.25 * (1.0 + (4.0 * b.eta * b.eta - 1.0) * c * c);
}

bool decoherence_ok(long links, const LinkBudget& b) {
  if (links < 1) throw std::invalid_argument("path length must be at least one link");
  return decohered_swap_fidelity(static_cast<double>(links), b) > b.f_lower.value();
}

double d_star(const LinkBudget& b, bool floored) {
  b.validate();
  const double radicand = (4.0 * b.f_lower.value() - 1.0) / (4.0 * b.eta * b.eta - 1.0);
  if (radicand < 0.0) {
    throw std::domain_error("(4 F_l - 1) / (4 eta^2 - 1) is negative");
  }
  const double log_argument = (3.0 * std::sqrt(radicand) + 1.0) / (4.0 * b.ft_star.value());
  if (!(log_argument > 0.0 && log_argument < 1.0)) {
    throw std::domain_error("logarithm argument must lie in (0, 1); the swapped target is "
                            "already below the lower fixed point");
  }
  const double length =
      std::pow(b.rate * b.t2 * std::sqrt(-std::log(log_argument)), 1.0 / b.lambda);
  return floored ? std::floor(length) : length;
}

}  // namespace repeater
