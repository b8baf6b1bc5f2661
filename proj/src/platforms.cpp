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

#include "repeater/platforms.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "repeater/errors.hpp"
#include "repeater/fixed_points.hpp"
#include "repeater/path_length.hpp"
#include "repeater/recursive_estimator.hpp"

#ifndef REPEATER_DEFAULT_PLATFORMS
#define REPEATER_DEFAULT_PLATFORMS "data/platforms.json"
#endif

namespace repeater {

namespace {

using nlohmann::json;

constexpr double kMaxSweepError = 0.1;

std::string line_column(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  const std::string_view head = text.substr(0, byte);
  const auto line = 1 + std::count(head.begin(), head.end(), '\n');
  const auto last_newline = head.rfind('\n');
  const auto column = last_newline == std::string_view::npos ? byte : byte - last_newline - 1;
  return "line " + std::to_string(line) + ", column " + std::to_string(column + 1);
}

double number_field(const json& row, const std::string& where, const char* field) {
  const auto it = row.find(field);
  if (it == row.end()) throw DatasetError(where + "." + field + ": missing field");
  if (!it->is_number()) throw DatasetError(where + "." + field + ": expected a number");
  return it->get<double>();
}

std::string string_field(const json& row, const std::string& where, const char* field,
                         bool required) {
  const auto it = row.find(field);
  if (it == row.end()) {
    if (required) throw DatasetError(where + "." + field + ": missing field");
    return {};
  }
  if (!it->is_string()) throw DatasetError(where + "." + field + ": expected a string");
  return it->get<std::string>();
}

bool blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

std::optional<double> lambda_of(const ScalingResult& r) {
  if (!r.feasible()) return std::nullopt;
  return r.estimate->lambda;
}

std::optional<double> try_d_star(const Platform& p, Fidelity ft, Fidelity f_lower, double eta,
                                 std::optional<double> lambda) {
  if (!lambda) return std::nullopt;
  const LinkBudget budget{
      .rate = p.rate_hz, .t2 = p.t2_s, .lambda = *lambda,
      .ft_star = ft, .f_lower = f_lower, .eta = eta};
  try {
    return d_star(budget);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

std::optional<Fidelity> try_f_t_star(double eps_g) {
  try {
    return f_t_star(eps_g);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

std::optional<double> evaluate_cell(const SweepGrid& grid, double eps_r, double eps_g,
                                    const AnalyticOptions& opts) {
  const ErrorParams err(eps_g, eps_r);
  const FixedPointResult fp = find_fixed_points(err);
  if (!fp.feasible()) return std::nullopt;
  const std::optional<Fidelity> ft = try_f_t_star(eps_g);
  if (!ft) return std::nullopt;
  if (grid.quantity == SweepQuantity::kFtStar) return ft->value();

  const ProtocolParams params = ProtocolParams::swapped_from(*ft, err);
  if (!feasible_for(params.start, params.target, fp)) return std::nullopt;
  switch (grid.quantity) {
    case SweepQuantity::kLambdaTilde:
      return lambda_of(lambda_tilde(params.start, params.target, err, 1.0, opts));
    case SweepQuantity::kLambdaRecursive:
      return lambda_of(lambda_recursive(params));
    case SweepQuantity::kDStar: {
      const Platform p{.name = "cell", .eps_g = eps_g, .eps_r = eps_r,
                       .rate_hz = *grid.rate_hz, .t2_s = *grid.t2_s, .note = {}};
      return try_d_star(p, *ft, fp.interval->lower, err.eta(),
                        lambda_of(lambda_recursive(params)));
    }
    case SweepQuantity::kFtStar:
      break;
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::string> Platform::violations() const {
  std::vector<std::string> out;
  if (name.empty()) out.emplace_back("name: must not be empty");
  if (!(eps_g >= 0.0 && eps_g < 1.0)) out.emplace_back("eps_g: must lie in [0, 1)");
  if (!(eps_r >= 0.0 && eps_r < 0.5)) out.emplace_back("eps_r: must lie in [0, 0.5)");
  if (!(rate_hz > 0.0 && std::isfinite(rate_hz))) out.emplace_back("rate_hz: must be positive");
  if (!(t2_s > 0.0 && std::isfinite(t2_s))) out.emplace_back("t2_s: must be positive");
  return out;
}

std::vector<Platform> parse_platforms(std::string_view text, std::string_view source) {
  if (blank(text)) return {};
  const std::string label(source);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DatasetError(label + ": syntax error at " + line_column(text, e.byte));
  }
  if (!doc.is_object() || !doc.contains("platforms") || !doc["platforms"].is_array()) {
    throw DatasetError(label + ": expected an object with a \"platforms\" array");
  }

  std::vector<Platform> out;
  std::string problems;
  const json& rows = doc["platforms"];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string where = label + ": platforms[" + std::to_string(i) + "]";
    const json& row = rows[i];
    if (!row.is_object()) throw DatasetError(where + ": expected an object");
    Platform p{
        .name = string_field(row, where, "name", true),
        .eps_g = number_field(row, where, "eps_g"),
        .eps_r = number_field(row, where, "eps_r"),
        .rate_hz = number_field(row, where, "rate_hz"),
        .t2_s = number_field(row, where, "t2_s"),
        .note = string_field(row, where, "note", false),
    };
    for (const std::string& v : p.violations()) problems += "\n  " + where + "." + v;
    out.push_back(std::move(p));
  }
  if (!problems.empty()) throw DatasetError(label + ": invalid dataset" + problems);
  return out;
}

std::vector<Platform> load_platforms(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError(path.string() + ": cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_platforms(text.str(), path.string());
}

std::string serialize_platforms(const std::vector<Platform>& platforms) {
  json rows = json::array();
  for (const Platform& p : platforms) {
    rows.push_back({{"name", p.name},
                    {"eps_g", p.eps_g},
                    {"eps_r", p.eps_r},
                    {"rate_hz", p.rate_hz},
                    {"t2_s", p.t2_s},
                    {"note", p.note}});
  }
  return json{{"platforms", rows}}.dump(2) + "\n";
}

void save_platforms(const std::filesystem::path& path, const std::vector<Platform>& platforms) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DatasetError(path.string() + ": cannot open file for writing");
  out << serialize_platforms(platforms);
}

std::filesystem::path default_dataset_path() { return REPEATER_DEFAULT_PLATFORMS; }

PlatformRow evaluate_platform(const Platform& p, const AnalyticOptions& opts) {
  if (const auto v = p.violations(); !v.empty()) {
    throw std::invalid_argument("platform " + p.name + ": " + v.front());
  }
  PlatformRow row;
  row.platform = p;
  const std::optional<Fidelity> ft = try_f_t_star(p.eps_g);
  if (!ft) return row;
  row.ft_star = ft->value();

  const ErrorParams err(p.eps_g, p.eps_r);
  const FixedPointResult fp = find_fixed_points(err);
  const ProtocolParams params = ProtocolParams::swapped_from(*ft, err);
  if (!feasible_for(params.start, params.target, fp)) return row;

  row.lambda_tilde = lambda_of(lambda_tilde(params.start, params.target, err, 1.0, opts));
  row.lambda_recursive = lambda_of(lambda_recursive(params));
  const Fidelity f_lower = fp.interval->lower;
  row.d_star = try_d_star(p, *ft, f_lower, err.eta(), row.lambda_recursive);
  row.d_star_tilde = try_d_star(p, *ft, f_lower, err.eta(), row.lambda_tilde);
  row.feasible = row.lambda_tilde.has_value() && row.lambda_recursive.has_value();
  return row;
}

const char* to_string(SweepQuantity q) {
  switch (q) {
    case SweepQuantity::kLambdaRecursive:
      return "lambda";
    case SweepQuantity::kLambdaTilde:
      return "lambda-tilde";
    case SweepQuantity::kFtStar:
      return "ft-star";
    case SweepQuantity::kDStar:
      return "dstar";
  }
  return "unknown";
}

double SweepRange::at(int i) const {
  if (i == steps - 1) return max;
  const double n = static_cast<double>(steps - 1);
  return min + i * ((max - min) / n);
}

void SweepGrid::validate() const {
  for (const auto* r : {&eps_r, &eps_g}) {
    if (r->steps < 2) throw std::invalid_argument("sweep ranges need at least 2 steps");
    if (!(r->min >= 0.0 && r->max <= kMaxSweepError && r->min <= r->max)) {
      throw std::invalid_argument("sweep ranges must satisfy 0 <= min <= max <= 0.1");
    }
  }
  if (eps_r.max >= 0.5) throw std::invalid_argument("eps_r must stay below 1/2");
  if (quantity == SweepQuantity::kDStar) {
    if (!rate_hz || !(*rate_hz > 0.0)) throw std::invalid_argument("dstar sweep needs a rate");
    if (!t2_s || !(*t2_s > 0.0)) throw std::invalid_argument("dstar sweep needs T2");
  }
}

std::vector<SweepCell> sweep(const SweepGrid& grid, const AnalyticOptions& opts) {
  grid.validate();
  opts.validate();
  const std::size_t cols = static_cast<std::size_t>(grid.eps_g.steps);
  std::vector<SweepCell> cells;
  cells.reserve(static_cast<std::size_t>(grid.eps_r.steps) * cols);
  for (int i = 0; i < grid.eps_r.steps; ++i) {
    for (int j = 0; j < grid.eps_g.steps; ++j) {
      cells.push_back({.eps_r = grid.eps_r.at(i), .eps_g = grid.eps_g.at(j), .value = {}});
    }
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                           static_cast<unsigned>(cells.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < cells.size(); k = next++) {
          try {
            cells[k].value = evaluate_cell(grid, cells[k].eps_r, cells[k].eps_g, opts);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return cells;
}

}  // namespace repeater
