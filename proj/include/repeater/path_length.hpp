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

namespace repeater {

/// Everything needed to decide how far a chain can stretch before stored
/// pairs decohere below the lower fixed point.
struct LinkBudget {
  double rate;      // neighbour entanglement generation rate, pairs/s
  double t2;        // memory coherence time, s
  double lambda;    // resource exponent
  Fidelity ft_star; // target fidelity
  Fidelity f_lower; // lower fixed point of the purification map
  double eta;       // swap read-out efficiency

  /// Throws std::invalid_argument when any field is out of range.
  void validate() const;
};

/// Whether a path of `links` hops keeps the decayed, swapped fidelity above
/// F_l, with storage time links^lambda / rate.
bool decoherence_ok(long links, const LinkBudget& b);

/// Left-hand side of the decoherence condition for a real-valued path length.
double decohered_swap_fidelity(double links, const LinkBudget& b);

/// Maximum path length at which the decoherence condition becomes an equality.
/// Floored to an integer when `floored`. Throws std::domain_error when the
/// radicand is negative or the logarithm argument leaves (0, 1).
double d_star(const LinkBudget& b, bool floored = false);

}  // namespace repeater
