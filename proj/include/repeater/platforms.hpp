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

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "repeater/analytic_estimator.hpp"

namespace repeater {

struct Platform {
  std::string name;
  double eps_g = 0.0;
  double eps_r = 0.0;
  double rate_hz = 0.0;  // neighbour pair generation rate
  double t2_s = 0.0;     // memory coherence time
  std::string note;      // free-text citation or remark

  /// Returns one message per violated field constraint; empty when valid.
  std::vector<std::string> violations() const;

  friend bool operator==(const Platform&, const Platform&) = default;
};

/// Raised for malformed or invalid dataset files. what() names the source,
/// the line (for syntax errors) or the row and field (for invalid values).
class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a dataset document: {"platforms": [{"name": ..., "eps_g": ...,
/// "eps_r": ..., "rate_hz": ..., "t2_s": ..., "note": ...}, ...]}.
/// Blank text is an empty dataset. `source` labels diagnostics.
std::vector<Platform> parse_platforms(std::string_view text, std::string_view source = "<input>");

std::vector<Platform> load_platforms(const std::filesystem::path& path);

std::string serialize_platforms(const std::vector<Platform>& platforms);

void save_platforms(const std::filesystem::path& path, const std::vector<Platform>& platforms);

/// Path of the dataset shipped with the build.
std::filesystem::path default_dataset_path();

struct PlatformRow {
  Platform platform;
  std::optional<double> ft_star;  // empty when the closed form drops below 1/2
  std::optional<double> lambda_tilde;
  std::optional<double> lambda_recursive;
  std::optional<double> d_star;        // uses lambda_recursive
  std::optional<double> d_star_tilde;  // uses lambda_tilde
  bool feasible = false;
};

/// Targets Ft = f_t_star(eps_g), starts from the two-link swap of Ft and
/// reports both scaling exponents and the unfloored D* for each.
PlatformRow evaluate_platform(const Platform& p, const AnalyticOptions& opts = {});

enum class SweepQuantity { kLambdaRecursive, kLambdaTilde, kFtStar, kDStar };

const char* to_string(SweepQuantity q);

struct SweepRange {
  double min = 0.0;
  double max = 0.0;
  int steps = 2;

  double at(int i) const;
};

struct SweepGrid {
  SweepRange eps_r;
  SweepRange eps_g;
  SweepQuantity quantity = SweepQuantity::kLambdaTilde;
  std::optional<double> rate_hz;  // required for kDStar
  std::optional<double> t2_s;     // required for kDStar

  /// Throws std::invalid_argument when steps < 2, a range leaves [0, 0.1] or
  /// runs backwards, or kDStar lacks rate or T2.
  void validate() const;
};

struct SweepCell {
  double eps_r;
  double eps_g;
  std::optional<double> value;  // empty when infeasible

  bool feasible() const { return value.has_value(); }
};

/// One cell per grid point, eps_r outer and eps_g inner. Cells are evaluated
/// concurrently; the order of the result does not depend on scheduling.
///
/// kFtStar cells are feasible when the purification map has fixed points.
/// The scaling and D* cells additionally need the swapped target to start
/// above the lower fixed point.
std::vector<SweepCell> sweep(const SweepGrid& grid, const AnalyticOptions& opts = {});

}  // namespace repeater
