// Copyright 2026 The qsteer Authors
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

#include "commands.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include <json.hpp>

namespace qsteer::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json state_to_json(const QuantumState& psi) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < psi.dim(); ++i) {
    arr.push_back({psi.amplitudes()(i).real(), psi.amplitudes()(i).imag()});
  }
  return arr;
}

ordered_json vector_to_json(const Eigen::VectorXd& v) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

ordered_json strategy_to_json(const RunConfig& config,
                              const StrategySpec& spec) {
  ordered_json s;
  s["kind"] = to_string(config.kind);
  s["delta0"] = config.delta0;
  s["omega0"] = config.omega0;
  s["T"] = config.horizon;
  s["envelope"] = config.envelope;
  ordered_json g;
  g["s_start"] = spec.grid.s_start;
  g["s_end"] = spec.grid.s_end;
  g["steps"] = spec.grid.steps;
  s["grid"] = g;
  return s;
}

void emit(std::ostream& out, const ordered_json& j) {
  out << j.dump(2) << "\n";
}

int config_failure(std::ostream& err, const ConfigError& e) {
  for (const auto& detail : e.details()) {
    err << "config error: " << detail << "\n";
  }
  return kConfig;
}

int numeric_failure(std::ostream& err, const std::exception& e) {
  err << "numeric failure: " << e.what() << "\n";
  return kNumeric;
}

void require_fields(const RunConfig& config, bool need_box, bool need_epsilon,
                    bool need_output, const std::optional<std::string>& output) {
  std::vector<std::string> missing;
  if (need_box && !config.box) missing.push_back("box: required for this command");
  if (need_box && !config.resolution) {
    missing.push_back("resolution: required for this command");
  }
  if (need_epsilon && !config.epsilon) {
    missing.push_back("epsilon: required for this command");
  }
  if (need_output && !output) {
    missing.push_back("output: required (config field or --output)");
  }
  if (!missing.empty()) throw ConfigError(std::move(missing));
}

std::optional<std::string> resolve_output(const RunConfig& config,
                                          const CliOverrides& overrides) {
  if (overrides.output) return overrides.output;
  return config.output;
}

/// Landau-Zener T-fit: numeric log P_err against T, log-uniform grid.
/// Readout uses the instantaneous eigenstates at the window edges (the
/// diabatic and adiabatic bases only merge as s -> infinity, so a plain
/// basis readout on a finite window is dominated by edge mismatch).
ordered_json lz_fit(const RunConfig& config, const CliOverrides& overrides) {
  const double d0 = config.delta0;
  const double o0 = config.omega0;
  const int n = config.compare.t_points;
  const double t0 = config.compare.t_min;
  const double t1 = config.compare.t_max;

  std::vector<double> ts, lps;
  int evaluated = 0;
  for (int i = 0; i < n; ++i) {
    const double T = t0 * std::pow(t1 / t0, static_cast<double>(i) / (n - 1));
    TimeGrid grid = lz_auto_grid(d0, o0, T);
    if (overrides.smax && *overrides.smax > 0.0) {
      grid = TimeGrid(-*overrides.smax, *overrides.smax, grid.steps);
    }
    if (overrides.steps) {
      grid = TimeGrid(grid.s_start, grid.s_end, *overrides.steps);
    }
    StrategySpec spec;
    spec.kind = StrategyKind::landau_zener;
    spec.delta0 = d0;
    spec.omega0 = o0;
    spec.horizon = T;
    spec.grid = grid;

    const ControlSignals signals = lz_controls(d0, o0, T);
    const AdiabaticFrame start =
        adiabatic_frame_at(signals.delta(grid.s_start), signals.omega(grid.s_start));
    const AdiabaticFrame end =
        adiabatic_frame_at(signals.delta(grid.s_end), signals.omega(grid.s_end));
    const QuantumState psi0(start.rotation.entries().col(1));
    const QuantumState target(end.rotation.entries().col(1));

    Eigen::VectorXd theta(2);
    theta << d0, o0;
    const QuantumState fin =
        propagate_final(make_plant(spec, T), theta, psi0, grid, T);
    const double p = error_probability(fin, target);
    ++evaluated;
    if (p >= 1e-14) {  // numeric floor excluded from the fit
      ts.push_back(T);
      lps.push_back(std::log(p));
    }
  }

  double slope = std::numeric_limits<double>::quiet_NaN();
  if (ts.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      mx += ts[i];
      my += lps[i];
    }
    mx /= ts.size();
    my /= ts.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      num += (ts[i] - mx) * (lps[i] - my);
      den += (ts[i] - mx) * (ts[i] - mx);
    }
    slope = num / den;
  }

  ordered_json fit;
  fit["fitted_slope"] = slope;
  fit["printed_slope"] = -std::numbers::pi * o0 * o0 / (d0 * d0);
  fit["points_used"] = ts.size();
  fit["points_evaluated"] = evaluated;
  fit["t_min"] = t0;
  fit["t_max"] = t1;
  fit["readout"] = "adiabatic-endpoints";
  return fit;
}

}  // namespace

int cmd_simulate(const RunConfig& config, const CliOverrides& overrides,
                 std::ostream& out, std::ostream& err) {
  StrategySpec spec;
  try {
    spec = build_spec(config, overrides);
  } catch (const ConfigError& e) {
    return config_failure(err, e);
  }

  try {
    const double T = config.horizon;
    const Eigen::VectorXd theta = nominal_theta(spec);
    const QuantumState psi0 = config.initial.realize(2);
    const QuantumState psi1 = config.target.realize(2);
    const QuantumState fin =
        propagate_final(make_plant(spec, T), theta, psi0, spec.grid, T);
    const double perr = error_probability(fin, psi1);

    ordered_json j;
    j["command"] = "simulate";
    j["strategy"] = strategy_to_json(config, spec);
    j["theta"] = vector_to_json(theta);
    j["perr"] = perr;
    j["final_state"] = state_to_json(fin);
    // Adiabatic-frame populations where the frame is defined at s_end.
    try {
      const ControlSignals signals = signals_at(spec, theta, T);
      const AdiabaticFrame frame = adiabatic_frame_at(
          signals.delta(spec.grid.s_end), signals.omega(spec.grid.s_end));
      const QuantumState phi = apply(frame.rotation.adjoint(), fin);
      j["adiabatic_populations"] = {std::norm(phi.amplitudes()(0)),
                                    std::norm(phi.amplitudes()(1))};
    } catch (const DegeneratePointError&) {
      j["adiabatic_populations"] = nullptr;
    }
    emit(out, j);
    return kOk;
  } catch (const InvalidInputError& e) {
    return config_failure(err, ConfigError({e.what()}));
  } catch (const std::exception& e) {
    return numeric_failure(err, e);
  }
}

int cmd_sweep(const RunConfig& config, const CliOverrides& overrides,
              std::ostream& out, std::ostream& err) {
  StrategySpec spec;
  std::optional<std::string> output;
  try {
    spec = build_spec(config, overrides);
    output = resolve_output(config, overrides);
    require_fields(config, /*need_box=*/true, /*need_epsilon=*/true,
                   /*need_output=*/true, output);
  } catch (const ConfigError& e) {
    return config_failure(err, e);
  }

  try {
    const double T = config.horizon;
    const ErrorMap map =
        sweep(spec, *config.box, *config.resolution, T,
              config.initial.realize(2), config.target.realize(2),
              overrides.threads);
    const RobustnessSet rs = robustness_set(map, *config.epsilon);
    write_error_map_csv(map, *output);

    ordered_json j;
    j["command"] = "sweep";
    j["strategy"] = strategy_to_json(config, spec);
    j["epsilon"] = rs.report.epsilon;
    j["inside_fraction"] = rs.report.inside_fraction;
    j["is_robust"] = rs.report.is_robust;
    j["worst_theta"] = vector_to_json(rs.report.worst_theta);
    j["worst_perr"] = rs.report.worst_perr;
    j["cells"] = map.cell_count();
    j["failed_cells"] = map.errors.size();
    if (!map.errors.empty()) {
      ordered_json diag = ordered_json::array();
      for (std::size_t i = 0; i < map.errors.size() && i < 10; ++i) {
        diag.push_back({{"cell", map.errors[i].cell},
                        {"message", map.errors[i].message}});
      }
      j["errors"] = diag;
    }
    j["csv"] = *output;
    emit(out, j);
    return rs.report.is_robust ? kOk : kNotRobust;
  } catch (const InvalidInputError& e) {
    return config_failure(err, ConfigError({e.what()}));
  } catch (const std::exception& e) {
    return numeric_failure(err, e);
  }
}

int cmd_compare(const RunConfig& config, const CliOverrides& overrides,
                std::ostream& out, std::ostream& err) {
  StrategySpec spec;
  std::optional<std::string> output;
  try {
    if (config.kind == StrategyKind::custom) {
      throw ConfigError(
          {"strategy.kind: compare needs a closed-form strategy "
           "(resonance, landau-zener, allen-eberly)"});
    }
    if (config.kind == StrategyKind::landau_zener && !(config.delta0 > 0.0)) {
      throw ConfigError(
          {"strategy.delta0: the Landau-Zener comparison needs delta0 > 0"});
    }
    spec = build_spec(config, overrides);
    output = resolve_output(config, overrides);
    require_fields(config, /*need_box=*/true, /*need_epsilon=*/false,
                   /*need_output=*/true, output);
  } catch (const ConfigError& e) {
    return config_failure(err, e);
  }

  try {
    const double T = config.horizon;
    const ErrorMap numeric =
        sweep(spec, *config.box, *config.resolution, T,
              config.initial.realize(2), config.target.realize(2),
              overrides.threads);
    if (!numeric.errors.empty()) {
      throw NumericError(std::to_string(numeric.errors.size()) +
                         " sweep cells failed: " +
                         numeric.errors.front().message);
    }
    const ErrorMap analytic =
        analytic_sweep(spec, *config.box, *config.resolution, T);
    write_comparison_csv(numeric, analytic, *output);

    double max_diff = 0.0;
    for (std::size_t i = 0; i < numeric.values.size(); ++i) {
      max_diff =
          std::max(max_diff, std::abs(numeric.values[i] - analytic.values[i]));
    }

    ordered_json j;
    j["command"] = "compare";
    j["strategy"] = strategy_to_json(config, spec);
    j["max_abs_diff"] = max_diff;
    j["cells"] = numeric.cell_count();
    if (config.kind == StrategyKind::landau_zener) {
      j["lz_fit"] = lz_fit(config, overrides);
    }
    j["csv"] = *output;
    emit(out, j);
    return kOk;
  } catch (const InvalidInputError& e) {
    return config_failure(err, ConfigError({e.what()}));
  } catch (const std::exception& e) {
    return numeric_failure(err, e);
  }
}

int cmd_teps(double epsilon, double delta0, double omega0, std::ostream& out,
             std::ostream& err) {
  try {
    const double t_eps = ae_t_epsilon(epsilon, delta0, omega0);
    ordered_json j;
    j["command"] = "teps";
    j["epsilon"] = epsilon;
    j["delta0"] = delta0;
    j["omega0"] = omega0;
    j["t_epsilon"] = t_eps;
    emit(out, j);
    return kOk;
  } catch (const InvalidInputError& e) {
    return config_failure(err, ConfigError({e.what()}));
  }
}

}  // namespace qsteer::cli
