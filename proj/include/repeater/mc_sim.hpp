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

#include <cstdint>
#include <map>
#include <ostream>
#include <vector>

#include "repeater/recursive_estimator.hpp"

namespace repeater {

/// The stochastic content of one nesting level: swap success probability and
/// the acceptance probability of each purification step.
struct LevelProtocol {
  double swap_success = 1.0;
  std::vector<double> step_acceptance;
};

struct SimConfig {
  int levels = 1;
  ProtocolParams protocol;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
};

struct SimReport {
  double mean_consumed = 0.0;
  double std_error = 0.0;
  std::map<std::uint64_t, std::uint64_t> histogram;  // consumed pairs -> trials
  double analytic_t = 0.0;                            // (2 B)^L
  std::uint64_t completed_trials = 0;
  std::uint64_t aborted_trials = 0;  // exceeded kMaxConsumedPairs

  friend bool operator==(const SimReport&, const SimReport&) = default;
};

inline constexpr std::uint64_t kMaxConsumedPairs = 1'000'000'000;

/// Simulates building one level-`levels` link, `trials` times. A level-k link
/// takes one swap of two level-(k-1) links followed by the purification steps
/// in order; an attempt at step i consumes two links of step i-1 and succeeds
/// with step_acceptance[i]. Failed swaps and purifications discard their
/// operands and retry the same step. Counts level-0 links per trial.
///
/// Trials are independent; trial t draws from a generator seeded by
/// (seed, t), so results do not depend on thread scheduling.
SimReport simulate_levels(const LevelProtocol& level, int levels, std::uint64_t trials,
                          std::uint64_t seed);

/// Runs simulate_levels on the deterministic purification trace of
/// cfg.protocol and fills analytic_t from b_recursive.
SimReport simulate_nested(const SimConfig& cfg);

/// Writes the histogram as CSV with header consumed_pairs,count.
void write_histogram_csv(std::ostream& out, const SimReport& report);

}  // namespace repeater
