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

#include "repeater/mc_sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace repeater {

namespace {

constexpr std::uint64_t kAborted = 0;

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

// Attempts needed to collect `successes` successes at probability p. The sum
// of `successes` independent geometric counts is negative binomial, so a whole
// batch of identical sub-protocols is drawn at once.
std::uint64_t attempts_for(std::uint64_t successes, double p, std::mt19937_64& rng) {
  if (successes == 0 || p >= 1.0) return successes;
  std::negative_binomial_distribution<std::int64_t> failures(
      static_cast<std::int64_t>(successes), p);
  return successes + static_cast<std::uint64_t>(failures(rng));
}

std::uint64_t run_trial(const LevelProtocol& level, int levels, std::mt19937_64& rng) {
  std::uint64_t needed = 1;
  for (int k = levels; k >= 1; --k) {
    for (auto it = level.step_acceptance.rbegin(); it != level.step_acceptance.rend(); ++it) {
      needed = 2 * attempts_for(needed, *it, rng);
      if (needed > kMaxConsumedPairs) return kAborted;
    }
    needed = 2 * attempts_for(needed, level.swap_success, rng);
    if (needed > kMaxConsumedPairs) return kAborted;
  }
  return needed;
}

void validate(const LevelProtocol& level, int levels, std::uint64_t trials) {
  if (levels < 1) throw std::invalid_argument("simulation needs at least one nesting level");
  if (trials < 1) throw std::invalid_argument("simulation needs at least one trial");
  auto bad = [](double p) { return !(p > 0.0 && p <= 1.0); };
  if (bad(level.swap_success) || std::any_of(level.step_acceptance.begin(),
                                             level.step_acceptance.end(), bad)) {
    throw std::invalid_argument("probabilities must lie in (0, 1]");
  }
}

}  // namespace

SimReport simulate_levels(const LevelProtocol& level, int levels, std::uint64_t trials,
                          std::uint64_t seed) {
  validate(level, levels, trials);

  std::vector<std::uint64_t> consumed(trials);
  const std::uint64_t workers = std::clamp<std::uint64_t>(
      std::thread::hardware_concurrency(), 1, std::max<std::uint64_t>(1, trials / 64));
  {
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t t = w; t < trials; t += workers) {
          std::mt19937_64 rng = trial_engine(seed, t);
          consumed[t] = run_trial(level, levels, rng);
        }
      });
    }
  }

  SimReport report;
  double mean = 0.0;
  double m2 = 0.0;
  for (std::uint64_t c : consumed) {
    if (c == kAborted) {
      ++report.aborted_trials;
      continue;
    }
    ++report.histogram[c];
    const double n = static_cast<double>(++report.completed_trials);
    const double delta = static_cast<double>(c) - mean;
    mean += delta / n;
    m2 += delta * (static_cast<double>(c) - mean);
  }
  report.mean_consumed = mean;
  if (report.completed_trials > 1) {
    const double n = static_cast<double>(report.completed_trials);
    report.std_error = std::sqrt(m2 / (n - 1.0) / n);
  }
  return report;
}

SimReport simulate_nested(const SimConfig& cfg) {
  const PurificationTrace trace = purification_trace(cfg.protocol);
  const LevelProtocol level{.swap_success = cfg.protocol.swap_success,
                            .step_acceptance = trace.acceptances()};
  SimReport report = simulate_levels(level, cfg.levels, cfg.trials, cfg.seed);
  const double b = pairs_per_level(level.step_acceptance, level.swap_success);
  report.analytic_t = std::pow(2.0 * b, cfg.levels);
  return report;
}

void write_histogram_csv(std::ostream& out, const SimReport& report) {
  out << "consumed_pairs,count\n";
  for (const auto& [pairs, count] : report.histogram) out << pairs << ',' << count << '\n';
}

}  // namespace repeater
