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

// Independent reference implementations used only by the tests. They are
// written directly from the closed-form expressions with plain doubles and
// share no code with the library.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace repeater::testing {

inline double ideal_map(double f) {
  const double q = (1.0 - f) / 3.0;
  return (f * f + q * q) / (f * f + 2.0 * f * q + 5.0 / 9.0 * (1.0 - f) * (1.0 - f));
}

inline double ideal_acceptance(double f) {
  const double q = (1.0 - f) / 3.0;
  return f * f + 2.0 * f * q + 5.0 / 9.0 * (1.0 - f) * (1.0 - f);
}

struct MapValue {
  double fidelity;
  double acceptance;
};

// Noisy map with a (1/4, 1/4, 1/2) split of the source-qubit Pauli errors.
inline MapValue noisy_map(double f, double eg, double er) {
  const double q = (1.0 - f) / 3.0;
  const double eta = 1.0 - er;
  const double a = eta * eta + er * er;
  const double b = eta * er;
  const double keep = (1.0 - eg) * (1.0 - eg);
  const double gate = (2.0 * eg - eg * eg) / keep;
  const double numerator = (f * f + q * q) * a + (f * q + q * q) * 2.0 * b +
                           2.0 * gate * (0.5 * f * q + 0.5 * q * q);
  const double p = (f * f + 2.0 * f * q + 5.0 / 9.0 * (1.0 - f) * (1.0 - f)) * a +
                   (f * q + q * q) * 8.0 * b;
  return {numerator * keep / p, p};
}

inline double swap_two(double f, double eta_s) {
  const double c = (4.0 * f - 1.0) / 3.0;
  return 0.25 * (1.0 + (4.0 * eta_s * eta_s - 1.0) * c * c);
}

inline double ft_star_reduced(double eg) {
  return (1.9 - 1.16 * eg - 4.28 * std::sqrt(eg * eg + 0.15 * eg)) / (1.9 + 2.66 * eg);
}

// Recursive exponent from a plain loop: log2(2^m / prod P) + 1.
struct RecursiveValue {
  int m;
  double lambda;
};

inline RecursiveValue recursive_lambda(double f0, double ft, double eg, double er) {
  double f = f0;
  double log2_b = 0.0;
  int m = 0;
  while (f < ft) {
    const MapValue v = noisy_map(f, eg, er);
    log2_b += 1.0 - std::log2(v.acceptance);
    f = v.fidelity;
    ++m;
  }
  return {m, log2_b + 1.0};
}

// Composite Simpson rule on a fixed fine grid.
template <typename F>
double simpson(F&& f, double a, double b, int panels = 20000) {
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

// Builds one link of the requested level by explicit recursion over every
// individual link and attempt.
class NaiveSimulator {
 public:
  NaiveSimulator(std::vector<double> acceptance, double swap_success, std::uint64_t seed)
      : acceptance_(std::move(acceptance)), swap_success_(swap_success), rng_(seed) {}

  std::uint64_t build(int level) {
    if (level == 0) return 1;
    return purified(level, static_cast<int>(acceptance_.size()));
  }

 private:
  std::uint64_t purified(int level, int step) {
    if (step == 0) return swapped(level);
    std::bernoulli_distribution accept(acceptance_[step - 1]);
    std::uint64_t cost = 0;
    for (;;) {
      cost += purified(level, step - 1) + purified(level, step - 1);
      if (accept(rng_)) return cost;
    }
  }

  std::uint64_t swapped(int level) {
    std::bernoulli_distribution success(swap_success_);
    std::uint64_t cost = 0;
    for (;;) {
      cost += build(level - 1) + build(level - 1);
      if (success(rng_)) return cost;
    }
  }

  std::vector<double> acceptance_;
  double swap_success_;
  std::mt19937_64 rng_;
};

}  // namespace repeater::testing
