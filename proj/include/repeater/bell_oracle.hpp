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

#include <array>
#include <cstddef>

#include "repeater/core_maps.hpp"

namespace repeater {

enum class Bell : std::size_t { kPhiPlus = 0, kPhiMinus = 1, kPsiPlus = 2, kPsiMinus = 3 };

enum class Pauli { kI, kX, kY, kZ };

/// Probabilities over the four Bell components of one pair.
class BellDiagState {
 public:
  /// Throws std::invalid_argument unless the weights are non-negative and sum
  /// to 1 within 1e-12.
  explicit BellDiagState(const std::array<double, 4>& weights);

  static BellDiagState werner(Fidelity f);

  double operator[](Bell b) const { return weights_[static_cast<std::size_t>(b)]; }
  const std::array<double, 4>& weights() const { return weights_; }

  double fidelity() const { return weights_[0]; }

  /// Twirls to the Werner state with the same fidelity.
  BellDiagState depolarized() const;

 private:
  std::array<double, 4> weights_;
};

/// Bell component reached when `op` acts on one qubit of a pair in `b`.
Bell apply_pauli(Pauli op, Bell b);

struct BilateralCnotOutcome {
  Bell source;
  Bell target;
};

/// Bilateral CNOT transition of a (source, target) Bell pair.
BilateralCnotOutcome bilateral_cnot(Bell source, Bell target);

struct OraclePurifyResult {
  BellDiagState state;
  double acceptance;
};

/// One exact purification round on Bell-diagonal inputs: bilateral CNOT,
/// independent Pauli error on each source qubit, read-out flips on both target
/// measurements, post-selection on coincident outcomes. Throws
/// DegenerateInputError if the acceptance underflows below 1e-300.
OraclePurifyResult oracle_purify(const BellDiagState& source, const BellDiagState& target,
                                 const ErrorParams& err, bool depolarize = false);

/// Exact swap of two Bell-diagonal pairs through a Bell-state measurement whose
/// two read-outs each err with probability 1 - eta_s.
BellDiagState oracle_swap(const BellDiagState& a, const BellDiagState& b,
                          const ErrorParams& err, bool depolarize = false);

}  // namespace repeater
