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

#include "repeater/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "repeater/analytic_estimator.hpp"
#include "repeater/csv.hpp"
#include "repeater/errors.hpp"
#include "repeater/fixed_points.hpp"
#include "repeater/mc_sim.hpp"
#include "repeater/path_length.hpp"
#include "repeater/platforms.hpp"
#include "repeater/recursive_estimator.hpp"

namespace repeater::cli {

namespace {

constexpr double kClampFloor = 0.0;
constexpr double kClampCap = 20.0;

// Raised for semantically invalid arguments that CLI11 cannot check itself.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

double parse_number(std::string_view text, const std::string& what) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw UsageError(what + ": '" + std::string(text) + "' is not a number");
  }
  return value;
}

SweepRange parse_range(const std::string& text, const std::string& what) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? first : text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
    throw UsageError(what + ": expected min:max:steps, got '" + text + "'");
  }
  const std::string_view view(text);
  const double steps = parse_number(view.substr(second + 1), what);
  if (steps != static_cast<int>(steps)) throw UsageError(what + ": steps must be an integer");
  return {.min = parse_number(view.substr(0, first), what),
          .max = parse_number(view.substr(first + 1, second - first - 1), what),
          .steps = static_cast<int>(steps)};
}

struct Common {
  bool strict = false;
};

struct Target {
  std::optional<Fidelity> ft;  // empty when the requested target does not exist
  std::optional<Fidelity> f0;
  std::optional<ScalingResult> optimized;
};

// Resolves --ft: a number, "auto" for the closed-form optimum, or "opt" for a
// numerical minimisation of the analytic exponent.
Target resolve_target(const std::string& spec, const ErrorParams& err, double ps,
                      const AnalyticOptions& opts) {
  Target t;
  if (spec == "opt") {
    try {
      const OptimalTarget best = optimize_ft(err, ps, opts);
      t.ft = best.target;
      t.f0 = best.start;
      t.optimized = best.scaling;
    } catch (const InfeasibleError&) {
    }
    return t;
  }
  if (spec == "auto") {
    try {
      t.ft = f_t_star(err.eps_g());
    } catch (const std::domain_error&) {
      return t;
    }
  } else {
    t.ft = Fidelity(parse_number(spec, "--ft"));
  }
  t.f0 = ProtocolParams::swapped_from(*t.ft, err, ps).start;
  return t;
}

std::optional<double> value_of(const std::optional<Fidelity>& f) {
  return f ? std::optional<double>(f->value()) : std::nullopt;
}

class Output {
 public:
  explicit Output(std::ostream& fallback) : fallback_(fallback) {}

  std::ostream& stream() { return buffer_; }

  void flush(const std::string& path) {
    if (path.empty() || path == "-") {
      fallback_ << buffer_.str();
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path + " for writing");
    file << buffer_.str();
  }

 private:
  std::ostream& fallback_;
  std::ostringstream buffer_;
};

void write_to(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  file << text;
}

int status(bool feasible, const Common& common) {
  return feasible || !common.strict ? kExitOk : kExitInfeasible;
}

struct PurifyCurveArgs {
  double eps_g = 0.0;
  double eps_r = 0.0;
  int iterations = 4;
  int points = 301;
  std::string out;
};

int purify_curve(const PurifyCurveArgs& a, std::ostream& stdout_stream) {
  if (a.iterations < 1) throw UsageError("--iterations must be at least 1");
  if (a.points < 2) throw UsageError("--points must be at least 2");
  const ErrorParams err(a.eps_g, a.eps_r);
  Output out(stdout_stream);
  csv::write_row(out.stream(), {"F", "F_after_1", "F_after_k"});
  for (int i = 0; i < a.points; ++i) {
    const double f = 0.25 + 0.75 * static_cast<double>(i) / (a.points - 1);
    Fidelity current(f);
    double once = 0.0;
    for (int k = 0; k < a.iterations; ++k) {
      current = purify(current, err).fidelity;
      if (k == 0) once = current.value();
    }
    csv::write_row(out.stream(), {csv::format(f), csv::format(once), csv::format(current.value())});
  }
  out.flush(a.out);
  return kExitOk;
}

struct LambdaArgs {
  double eps_g = 0.0;
  double eps_r = 0.0;
  std::string ft = "auto";
  std::string method = "analytic";
  bool ceiling = false;
  double ps = 1.0;
  std::string out;
};

int lambda(const LambdaArgs& a, const Common& common, std::ostream& stdout_stream) {
  const ErrorParams err(a.eps_g, a.eps_r);
  AnalyticOptions opts{.use_ceiling = a.ceiling};
  Method method = Method::kAnalytic;
  if (a.method == "recursive") {
    method = Method::kRecursive;
  } else if (a.method == "closed-form") {
    method = Method::kAnalyticClosedForm;
    opts.integral_mode = IntegralMode::kClosedForm;
  }

  const Target t = resolve_target(a.ft, err, a.ps, opts);
  ScalingResult result{.method = method, .estimate = std::nullopt};
  if (t.ft && t.f0) {
    if (method == Method::kRecursive) {
      const ProtocolParams p{.target = *t.ft, .start = *t.f0, .swap_success = a.ps, .err = err};
      if (feasible_for(p.start, p.target, err)) result = lambda_recursive(p);
    } else if (t.optimized && method == Method::kAnalytic) {
      result = *t.optimized;
    } else {
      result = lambda_tilde(*t.f0, *t.ft, err, a.ps, opts);
    }
  }

  Output out(stdout_stream);
  csv::write_row(out.stream(),
                 {"method", "eps_g", "eps_r", "ft", "f0", "m", "b", "lambda", "feasible"});
  const auto& e = result.estimate;
  csv::write_row(out.stream(),
                 {to_string(method), csv::format(a.eps_g), csv::format(a.eps_r),
                  csv::format(value_of(t.ft)), csv::format(value_of(t.f0)),
                  csv::format(e ? std::optional(e->m) : std::nullopt),
                  csv::format(e ? std::optional(e->b) : std::nullopt),
                  csv::format(e ? std::optional(e->lambda) : std::nullopt),
                  csv::format(result.feasible())});
  out.flush(a.out);
  return status(result.feasible(), common);
}

struct SweepArgs {
  std::string quantity;
  std::string eps_r;
  std::string eps_g;
  bool clamp = false;
  std::optional<double> rate;
  std::optional<double> t2;
  std::string out;
};

int sweep_command(const SweepArgs& a, const Common& common, std::ostream& stdout_stream) {
  SweepGrid grid{.eps_r = parse_range(a.eps_r, "--eps-r"),
                 .eps_g = parse_range(a.eps_g, "--eps-g"),
                 .quantity = SweepQuantity::kLambdaTilde,
                 .rate_hz = a.rate,
                 .t2_s = a.t2};
  for (SweepQuantity q : {SweepQuantity::kLambdaRecursive, SweepQuantity::kLambdaTilde,
                          SweepQuantity::kFtStar, SweepQuantity::kDStar}) {
    if (a.quantity == to_string(q)) grid.quantity = q;
  }
  const std::vector<SweepCell> cells = sweep(grid);

  Output out(stdout_stream);
  csv::write_row(out.stream(), {"eps_r", "eps_g", "value", "feasible"});
  bool all_feasible = true;
  for (const SweepCell& c : cells) {
    std::optional<double> v = c.value;
    if (v && a.clamp) v = std::clamp(*v, kClampFloor, kClampCap);
    all_feasible = all_feasible && c.feasible();
    csv::write_row(out.stream(), {csv::format(c.eps_r), csv::format(c.eps_g), csv::format(v),
                                  csv::format(c.feasible())});
  }
  out.flush(a.out);
  return status(all_feasible, common);
}

struct FstarArgs {
  double eps_g = 0.0;
  std::optional<double> eps_r;
  bool full = false;
  std::string out;
};

int fstar(const FstarArgs& a, const Common& common, std::ostream& stdout_stream) {
  if (a.full && !a.eps_r) throw UsageError("--full requires --eps-r");
  std::optional<double> value;
  try {
    value = a.full ? f_t_star_full(a.eps_g, *a.eps_r).value() : f_t_star(a.eps_g).value();
  } catch (const std::domain_error&) {
    if (!(a.eps_g >= 0.0 && a.eps_g < 1.0)) throw UsageError("--eps-g must lie in [0, 1)");
  }
  Output out(stdout_stream);
  csv::write_row(out.stream(), {"eps_g", "eps_r", "form", "ft_star", "feasible"});
  csv::write_row(out.stream(), {csv::format(a.eps_g), csv::format(a.eps_r),
                                a.full ? "full" : "reduced", csv::format(value),
                                csv::format(value.has_value())});
  out.flush(a.out);
  return status(value.has_value(), common);
}

struct PlatformsArgs {
  std::string data;
  std::string out;
};

std::filesystem::path dataset_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("REPEATER_PLATFORMS"); env != nullptr && *env != '\0') {
    return env;
  }
  return default_dataset_path();
}

int platforms(const PlatformsArgs& a, const Common& common, std::ostream& stdout_stream) {
  const std::vector<Platform> rows = load_platforms(dataset_path(a.data));
  Output out(stdout_stream);
  csv::write_row(out.stream(), {"name", "eps_g", "eps_r", "ft_star", "lambda_tilde",
                                "lambda_recursive", "d_star", "feasible"});
  bool all_feasible = true;
  for (const Platform& p : rows) {
    const PlatformRow r = evaluate_platform(p);
    all_feasible = all_feasible && r.feasible;
    csv::write_row(out.stream(),
                   {csv::escape(p.name), csv::format(p.eps_g), csv::format(p.eps_r),
                    csv::format(r.ft_star), csv::format(r.lambda_tilde),
                    csv::format(r.lambda_recursive), csv::format(r.d_star),
                    csv::format(r.feasible)});
  }
  out.flush(a.out);
  return status(all_feasible, common);
}

struct DstarArgs {
  double rate = 0.0;
  double t2 = 0.0;
  double eps_g = 0.0;
  double eps_r = 0.0;
  std::optional<double> lambda;
  bool floor = false;
  std::string out;
};

int dstar(const DstarArgs& a, const Common& common, std::ostream& stdout_stream) {
  if (!(a.rate > 0.0)) throw UsageError("--rate must be positive");
  if (!(a.t2 > 0.0)) throw UsageError("--t2 must be positive");
  if (a.lambda && !(*a.lambda >= 1.0)) throw UsageError("--lambda must be at least 1");
  const ErrorParams err(a.eps_g, a.eps_r);
  std::optional<double> lambda = a.lambda;
  std::optional<double> length;
  const FixedPointResult fp = find_fixed_points(err);
  std::optional<Fidelity> ft;
  try {
    ft = f_t_star(a.eps_g);
  } catch (const std::domain_error&) {
  }
  if (ft && fp.feasible()) {
    const ProtocolParams p = ProtocolParams::swapped_from(*ft, err);
    if (!lambda && feasible_for(p.start, p.target, fp)) {
      const ScalingResult r = lambda_recursive(p);
      if (r.feasible()) lambda = r.estimate->lambda;
    }
    if (lambda) {
      const LinkBudget budget{.rate = a.rate, .t2 = a.t2, .lambda = *lambda, .ft_star = *ft,
                              .f_lower = fp.interval->lower, .eta = err.eta()};
      try {
        length = d_star(budget, a.floor);
      } catch (const std::domain_error&) {
      }
    }
  }
  Output out(stdout_stream);
  csv::write_row(out.stream(),
                 {"eps_g", "eps_r", "rate_hz", "t2_s", "lambda", "d_star", "feasible"});
  csv::write_row(out.stream(), {csv::format(a.eps_g), csv::format(a.eps_r), csv::format(a.rate),
                                csv::format(a.t2), csv::format(lambda), csv::format(length),
                                csv::format(length.has_value())});
  out.flush(a.out);
  return status(length.has_value(), common);
}

struct SimulateArgs {
  int levels = 1;
  double eps_g = 0.0;
  double eps_r = 0.0;
  std::string ft = "auto";
  double ps = 1.0;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  std::string histogram;
  std::string out;
};

int simulate(const SimulateArgs& a, const Common& common, std::ostream& stdout_stream) {
  if (a.levels < 1) throw UsageError("--levels must be at least 1");
  if (a.trials < 1) throw UsageError("--trials must be at least 1");
  const ErrorParams err(a.eps_g, a.eps_r);
  const Target t = resolve_target(a.ft, err, a.ps, AnalyticOptions{});

  std::optional<SimReport> report;
  if (t.ft && t.f0 && feasible_for(*t.f0, *t.ft, err)) {
    const SimConfig cfg{
        .levels = a.levels,
        .protocol = {.target = *t.ft, .start = *t.f0, .swap_success = a.ps, .err = err},
        .trials = a.trials,
        .seed = a.seed};
    report = simulate_nested(cfg);
  }

  Output out(stdout_stream);
  csv::write_row(out.stream(), {"levels", "trials", "seed", "completed_trials", "aborted_trials",
                                "mean_consumed", "std_error", "analytic_t", "feasible"});
  auto count = [](std::uint64_t n) { return std::to_string(n); };
  csv::write_row(
      out.stream(),
      {std::to_string(a.levels), count(a.trials), count(a.seed),
       report ? count(report->completed_trials) : "", report ? count(report->aborted_trials) : "",
       csv::format(report ? std::optional(report->mean_consumed) : std::nullopt),
       csv::format(report ? std::optional(report->std_error) : std::nullopt),
       csv::format(report ? std::optional(report->analytic_t) : std::nullopt),
       csv::format(report.has_value())});
  if (report) {
    std::ostringstream histogram;
    write_histogram_csv(histogram, *report);
    if (a.histogram.empty()) {
      out.stream() << '\n' << histogram.str();
    } else {
      write_to(a.histogram, histogram.str());
    }
  }
  out.flush(a.out);
  return status(report.has_value(), common);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resource scaling estimates for purification-based quantum repeaters",
               "repeater_cli"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("--strict", common.strict, "Exit with status 3 when a result is infeasible");

  auto error_options = [](CLI::App* sub, double& eps_g, double& eps_r) {
    sub->add_option("--eps-g", eps_g, "Effective gate error probability")->required();
    sub->add_option("--eps-r", eps_r, "Effective read-out error probability")->required();
  };

  PurifyCurveArgs curve;
  CLI::App* curve_cmd = app.add_subcommand("purify-curve", "Purification map and its iterates");
  error_options(curve_cmd, curve.eps_g, curve.eps_r);
  curve_cmd->add_option("--iterations", curve.iterations, "Iterate count for F_after_k")
      ->capture_default_str();
  curve_cmd->add_option("--points", curve.points, "Grid points on [1/4, 1]")
      ->capture_default_str();
  curve_cmd->add_option("--out", curve.out, "Output file (default: standard output)");

  LambdaArgs lam;
  CLI::App* lambda_cmd = app.add_subcommand("lambda", "Resource exponent for one error point");
  error_options(lambda_cmd, lam.eps_g, lam.eps_r);
  lambda_cmd->add_option("--ft", lam.ft, "Target fidelity: a number, auto, or opt")
      ->capture_default_str();
  lambda_cmd->add_option("--method", lam.method, "Estimator")
      ->check(CLI::IsMember({"recursive", "analytic", "closed-form"}))
      ->capture_default_str();
  lambda_cmd->add_flag("--ceiling", lam.ceiling, "Round the analytic step count up");
  lambda_cmd->add_option("--ps", lam.ps, "Swap success probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  lambda_cmd->add_option("--out", lam.out, "Output file (default: standard output)");

  SweepArgs sw;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Evaluate a quantity on an error grid");
  sweep_cmd->add_option("--quantity", sw.quantity, "Quantity per cell")
      ->check(CLI::IsMember({"lambda", "lambda-tilde", "ft-star", "dstar"}))
      ->required();
  sweep_cmd->add_option("--eps-r", sw.eps_r, "Read-out error range min:max:steps")->required();
  sweep_cmd->add_option("--eps-g", sw.eps_g, "Gate error range min:max:steps")->required();
  sweep_cmd->add_flag("--clamp", sw.clamp, "Clamp values to [0, 20] for plotting");
  sweep_cmd->add_option("--rate", sw.rate, "Pair generation rate in Hz (dstar)");
  sweep_cmd->add_option("--t2", sw.t2, "Memory coherence time in s (dstar)");
  sweep_cmd->add_option("--out", sw.out, "Output file (default: standard output)");

  FstarArgs fs;
  CLI::App* fstar_cmd = app.add_subcommand("fstar", "Closed-form optimal target fidelity");
  fstar_cmd->add_option("--eps-g", fs.eps_g, "Effective gate error probability")->required();
  fstar_cmd->add_option("--eps-r", fs.eps_r, "Effective read-out error (with --full)");
  fstar_cmd->add_flag("--full", fs.full, "Use the form that depends on both errors");
  fstar_cmd->add_option("--out", fs.out, "Output file (default: standard output)");

  PlatformsArgs pl;
  CLI::App* platforms_cmd = app.add_subcommand("platforms", "Evaluate every platform in a dataset");
  platforms_cmd->add_option("--data", pl.data,
                            "Dataset file (default: $REPEATER_PLATFORMS or the bundled file)");
  platforms_cmd->add_option("--out", pl.out, "Output file (default: standard output)");

  DstarArgs ds;
  CLI::App* dstar_cmd = app.add_subcommand("dstar", "Longest path before memory decoherence");
  dstar_cmd->add_option("--rate", ds.rate, "Pair generation rate in Hz")->required();
  dstar_cmd->add_option("--t2", ds.t2, "Memory coherence time in s")->required();
  error_options(dstar_cmd, ds.eps_g, ds.eps_r);
  dstar_cmd->add_option("--lambda", ds.lambda, "Resource exponent (default: recursive estimate)");
  dstar_cmd->add_flag("--floor", ds.floor, "Round down to a whole number of links");
  dstar_cmd->add_option("--out", ds.out, "Output file (default: standard output)");

  SimulateArgs sim;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Monte Carlo count of consumed pairs");
  sim_cmd->add_option("--levels", sim.levels, "Nesting levels")->required();
  error_options(sim_cmd, sim.eps_g, sim.eps_r);
  sim_cmd->add_option("--ft", sim.ft, "Target fidelity: a number, auto, or opt")
      ->capture_default_str();
  sim_cmd->add_option("--ps", sim.ps, "Swap success probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sim_cmd->add_option("--trials", sim.trials, "Number of trials")->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
  sim_cmd->add_option("--histogram", sim.histogram,
                      "Histogram CSV file (default: appended after the summary)");
  sim_cmd->add_option("--out", sim.out, "Output file (default: standard output)");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto chosen = app.get_subcommands();
    out << app.help();
    if (!chosen.empty()) out << '\n' << chosen.front()->help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto chosen = app.get_subcommands();
    err << (chosen.empty() ? app.help() : chosen.front()->help());
    return kExitUsage;
  }

  try {
    if (curve_cmd->parsed()) return purify_curve(curve, out);
    if (lambda_cmd->parsed()) return lambda(lam, common, out);
    if (sweep_cmd->parsed()) return sweep_command(sw, common, out);
    if (fstar_cmd->parsed()) return fstar(fs, common, out);
    if (platforms_cmd->parsed()) return platforms(pl, common, out);
    if (dstar_cmd->parsed()) return dstar(ds, common, out);
    if (sim_cmd->parsed()) return simulate(sim, common, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DatasetError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace repeater::cli
