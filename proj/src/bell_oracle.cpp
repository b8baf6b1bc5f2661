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

#include "repeater/bell_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "repeater/errors.hpp"

namespace repeater {

namespace {

constexpr double kMinAcceptance = 1e-300;

using enum Bell;

// Rows are indexed by [source][target].
constexpr BilateralCnotOutcome kCnotTable[4][4] = {
    // source Phi+
    {{kPhiPlus, kPhiPlus}, {kPhiMinus, kPhiMinus}, {kPhiPlus, kPsiPlus}, {kPhiMinus, kPsiMinus}},
    // source Phi-
    {{kPhiMinus, kPhiPlus}, {kPhiPlus, kPhiMinus}, {kPhiMinus, kPsiPlus}, {kPhiPlus, kPsiMinus}},
    // source Psi+
    {{kPsiPlus, kPsiPlus}, {kPsiMinus, kPsiMinus}, {kPsiPlus, kPhiPlus}, {kPsiMinus, kPhiMinus}},
    // source Psi-
    {{kPsiMinus, kPsiPlus}, {kPsiPlus, kPsiMinus}, {kPsiMinus, kPhiPlus}, {kPsiPlus, kPhiMinus}},
};

// Rows are indexed by Pauli (I, X, Y, Z), columns by the input component.
constexpr Bell kPauliTable[4][4] = {
    {kPhiPlus, kPhiMinus, kPsiPlus, kPsiMinus},
    {kPsiPlus, kPsiMinus, kPhiPlus, kPhiMinus},
    {kPsiMinus, kPsiPlus, kPhiMinus, kPhiPlus},
    {kPhiMinus, kPhiPlus, kPsiMinus, kPsiPlus},
};

constexpr std::size_t idx(Bell b) { return static_cast<std::size_t>(b); }

bool coincident(Bell target) { return target == kPhiPlus || target == kPhiMinus; }

// Bell label of the pair produced by swapping pairs in components a and b,
// after the standard Pauli correction.
Bell compose(Bell a, Bell b) {
  const std::size_t phase = (idx(a) & 1u) ^ (idx(b) & 1u);
  const std::size_t bit = (idx(a) >> 1) ^ (idx(b) >> 1);
  return static_cast<Bell>(bit << 1 | phase);
}

}  // namespace

BellDiagState::BellDiagState(const std::array<double, 4>& weights) : weights_(weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("Bell weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("Bell weights must sum to 1");
  }
}

BellDiagState BellDiagState::werner(Fidelity f) {
  const double q = (1.0 - f.value()) / 3.0;
  return BellDiagState({f.value(), q, q, q});
}

BellDiagState BellDiagState::depolarized() const {
  return werner(Fidelity::from_computed(weights_[0]));
}

Bell apply_pauli(Pauli op, Bell b) { return kPauliTable[static_cast<int>(op)][idx(b)]; }

BilateralCnotOutcome bilateral_cnot(Bell source, Bell target) {
  return kCnotTable[idx(source)][idx(target)];
}

OraclePurifyResult oracle_purify(const BellDiagState& source, const BellDiagState& target,
                                 const ErrorParams& err, bool depolarize) {
  const double eta = err.eta();
  const double agree = eta * eta + (1.0 - eta) * (1.0 - eta);
  const double disagree_flipped = 2.0 * eta * (1.0 - eta);

  const double eg = err.eps_g();
  const PauliWeights& pw = err.weights();
  const std::array<std::pair<Pauli, double>, 4> channel = {{
      {Pauli::kI, 1.0 - eg},
      {Pauli::kX, eg * pw.x},
      {Pauli::kY, eg * pw.y},
      {Pauli::kZ, eg * pw.z},
  }};

  std::array<double, 4> kept{};
  double acceptance = 0.0;
  for (std::size_t s = 0; s < 4; ++s) {
    for (std::size_t t = 0; t < 4; ++t) {
      const BilateralCnotOutcome out = bilateral_cnot(static_cast<Bell>(s), static_cast<Bell>(t));
      const double w = source.weights()[s] * target.weights()[t] *
                       (coincident(out.target) ? agree : disagree_flipped);
      acceptance += w;
      // Independent Pauli error on each of the two source qubits.
      for (const auto& [op_a, p_a] : channel) {
        const Bell after_a = apply_pauli(op_a, out.source);
        for (const auto& [op_b, p_b] : channel) {
          kept[idx(apply_pauli(op_b, after_a))] += w * p_a * p_b;
        }
      }
    }
  }
  if (acceptance < kMinAcceptance) {
    throw DegenerateInputError("purification acceptance probability underflowed");
  }
  for (double& k : kept) k /= acceptance;
  // Normalisation drift is far below the 1e-12 validation slack.
  BellDiagState state(kept);
  return {depolarize ? state.depolarized() : state, acceptance};
}

BellDiagState oracle_swap(const BellDiagState& a, const BellDiagState& b, const ErrorParams& err,
                          bool depolarize) {
  const double miss = 1.0 - err.eta_s();
  // One read-out decides the bit correction, the other the phase correction.
  const std::array<std::pair<Pauli, double>, 4> readout = {{
      {Pauli::kI, (1.0 - miss) * (1.0 - miss)},
      {Pauli::kX, miss * (1.0 - miss)},
      {Pauli::kZ, (1.0 - miss) * miss},
      {Pauli::kY, miss * miss},
  }};

  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const Bell joined = compose(static_cast<Bell>(i), static_cast<Bell>(j));
      for (const auto& [op, p] : readout) {
        out[idx(apply_pauli(op, joined))] += a.weights()[i] * b.weights()[j] * p;
      }
    }
  }
  BellDiagState state(out);
  return depolarize ? state.depolarized() : state;
}

}  // namespace repeater
