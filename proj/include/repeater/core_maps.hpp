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

#include <compare>
#include <optional>

namespace repeater {

/// Largest amount by which a computed fidelity may leave (0, 1] and still be
/// clamped back onto the boundary. Anything beyond this is an error.
inline constexpr double kClampTolerance = 1e-9;

/// Overlap of a stored pair with the target Bell state.
///
/// Values are in (0, 1]. A fidelity produced by one of the maps below carries a
/// `clamped()` flag when floating error pushed it marginally outside that range.
class Fidelity {
 public:
  /// Throws std::domain_error unless 0 < value <= 1.
  explicit Fidelity(double value);

  /// Wraps a computed value, clamping excursions up to kClampTolerance.
  static Fidelity from_computed(double raw);

  double value() const { return value_; }
  bool clamped() const { return clamped_; }

  friend bool operator==(Fidelity a, Fidelity b) { return a.value_ == b.value_; }
  friend std::partial_ordering operator<=>(Fidelity a, Fidelity b) {
    return a.value_ <=> b.value_;
  }

 private:
  Fidelity(double value, bool clamped) : value_(value), clamped_(clamped) {}

  double value_;
  bool clamped_ = false;
};

/// Conditional weights of the Pauli error that hits a source qubit.
struct PauliWeights {
  double x = 0.25;
  double y = 0.25;
  double z = 0.5;
};

/// Effective gate and read-out errors of one repeater platform.
class ErrorParams {
 public:
  /// eps_g in [0, 1), eps_r in [0, 0.5), weights non-negative and summing to 1,
  /// eta_s in (0.5, 1] (defaults to eta = 1 - eps_r).
  ErrorParams(double eps_g, double eps_r, PauliWeights weights = {},
              std::optional<double> eta_s = std::nullopt);

  static ErrorParams none() { return ErrorParams(0.0, 0.0); }

  double eps_g() const { return eps_g_; }
  double eps_r() const { return eps_r_; }
  double eta() const { return 1.0 - eps_r_; }
  double eta_s() const { return eta_s_; }
  const PauliWeights& weights() const { return weights_; }

 private:
  double eps_g_;
  double eps_r_;
  PauliWeights weights_;
  double eta_s_;
};

/// Parameters of the depolarising-CNOT reference model: read-out efficiency
/// and two-qubit gate reliability.
struct DurParams {
  double eta = 1.0;
  double p2 = 1.0;
};

struct PurifyResult {
  Fidelity fidelity;
  double acceptance;
};

enum class SwapModel {
  kAbsorbed,   // gate errors folded into the swap read-out efficiency eta_s
  kGateError,  // explicit (1 - eps_g)^3 factor per joined link, read-out eta
};

/// Error-free recurrence map for two Werner pairs of fidelity f.
Fidelity purify_ideal(Fidelity f);

/// Acceptance probability of one round with read-out efficiency eta. Does not
/// depend on the gate error.
double acceptance_probability(Fidelity f, double eta);

/// One purification round under gate error eps_g and read-out error eps_r,
/// keeping terms to first order in both. Returns the output fidelity and the
/// acceptance probability.
PurifyResult purify(Fidelity f, const ErrorParams& err);

/// Reference map in which a faulty CNOT outputs the maximally mixed state.
Fidelity purify_dur(Fidelity f, const DurParams& params);

/// Fidelity after joining `links` adjacent links of fidelity f (f > 1/4).
Fidelity swap_fidelity(Fidelity f, int links, const ErrorParams& err,
                       SwapModel model = SwapModel::kAbsorbed);

/// Gaussian memory decay f0 * exp(-(t / t2)^2).
Fidelity decay(Fidelity f0, double t, double t2);

}  // namespace repeater
