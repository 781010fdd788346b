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

// End-to-end acceptance suite: one scripted check per shipped guarantee,
// one pass/fail line each. Run `qsteer_acceptance all` or a single
// criterion by number.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "commands.hpp"
#include "config.hpp"

using namespace qsteer;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

Eigen::VectorXd theta2(double a, double b) {
  Eigen::VectorXd t(2);
  t << a, b;
  return t;
}

StrategySpec resonance_spec(TimeGrid grid = {0.0, 1.0, 4000}) {
  StrategySpec spec;
  spec.kind = StrategyKind::resonance;
  spec.omega0 = 1.0;
  spec.grid = grid;
  return spec;
}

StrategySpec ae_spec(double delta0, double omega0, TimeGrid grid) {
  StrategySpec spec;
  spec.kind = StrategyKind::allen_eberly;
  spec.delta0 = delta0;
  spec.omega0 = omega0;
  spec.grid = grid;
  return spec;
}

StrategySpec lz_spec(double delta0, double omega0, double T) {
  StrategySpec spec;
  spec.kind = StrategyKind::landau_zener;
  spec.delta0 = delta0;
  spec.omega0 = omega0;
  spec.horizon = T;
  spec.grid = lz_auto_grid(delta0, omega0, T);
  return spec;
}

double numeric_perr(const StrategySpec& spec, const Eigen::VectorXd& theta,
                    double T) {
  const QuantumState fin = propagate_final(
      make_plant(spec, T), theta, QuantumState::basis(2, 0), spec.grid, T);
  return error_probability(fin, QuantumState::basis(2, 1));
}

std::vector<double> grid5() {
  std::vector<double> g;
  for (int i = 0; i < 5; ++i) g.push_back(0.5 + 1.5 * i / 4.0);
  return g;
}

// --- criterion 1: resonance analytic agreement -------------------------

Outcome criterion1() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(20260811);
  std::uniform_real_distribution<double> omega_dist(0.1, 5.0);
  std::uniform_real_distribution<double> t_dist(0.1, 10.0);

  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double omega0 = omega_dist(rng);
    const double T = t_dist(rng);
    const double numeric =
        numeric_perr(resonance_spec(), theta2(omega0, 1.0), T);
    worst = std::max(worst, std::abs(numeric - resonance_perr(T, omega0, 1.0)));
  }
  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << "max |numeric - cos^2(omega0 T)| = " << worst << " (bound 1e-8), "
         << elapsed << " s (bound 5)";
  return {worst <= 1e-8 && elapsed < 5.0, detail.str()};
}

// --- criterion 2: resonance zeros ---------------------------------------

Outcome criterion2() {
  double worst = 0.0;
  for (int k = 0; k <= 10; ++k) {
    const double omega0 = resonance_zero(1.0, 1.0, k);
    worst = std::max(worst,
                     numeric_perr(resonance_spec(), theta2(omega0, 1.0), 1.0));
  }
  std::ostringstream detail;
  detail << "max numeric P_err at the k = 0..10 zeros = " << worst
         << " (bound 1e-8)";
  return {worst <= 1e-8, detail.str()};
}

// --- criterion 3: resonance P_max on the uncertainty box ----------------

Outcome criterion3() {
  const double z = kPi / 2, beta = 0.1, sigma = 0.05, T = 1.0;
  Eigen::VectorXd lo(2), hi(2);
  lo << z - beta, 1.0 - sigma;
  hi << z + beta, 1.0 + sigma;
  const ErrorMap map =
      sweep(resonance_spec(), ParameterBox(lo, hi), {33, 33}, T,
            QuantumState::basis(2, 0), QuantumState::basis(2, 1));
  if (!map.errors.empty()) return {false, "sweep cells failed"};

  const auto [theta, value] = worst_case(map);
  const double expected = resonance_pmax(z, 1.0, beta, sigma, T);
  const bool at_corner = std::abs(theta(0) - (z + beta)) < 1e-12 &&
                         std::abs(theta(1) - (1.0 + sigma)) < 1e-12;
  std::ostringstream detail;
  detail << "P_max = " << value << " vs cos^2(T Omega_bar A_bar) = "
         << expected << " (|diff| = " << std::abs(value - expected)
         << ", bound 1e-6), argmax at far corner: "
         << (at_corner ? "yes" : "NO");
  return {std::abs(value - expected) <= 1e-6 && at_corner, detail.str()};
}

// --- criterion 4: Allen-Eberly exact agreement --------------------------

Outcome criterion4() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<double> amplitudes = grid5();
  const std::vector<double> horizons{0.5, 1.0, 2.0, 5.0};

  auto max_error = [&](const TimeGrid& grid) {
    double worst = 0.0;
    for (double T : horizons) {
      for (double d0 : amplitudes) {
        for (double o0 : amplitudes) {
          const double numeric =
              numeric_perr(ae_spec(d0, o0, grid), theta2(d0, o0), T);
          worst =
              std::max(worst, std::abs(numeric - ae_perr_exact(T, o0, d0)));
        }
      }
    }
    return worst;
  };

  const double coarse = max_error(TimeGrid(-8.0, 8.0, 4000));
  const double fine = max_error(TimeGrid(-12.0, 12.0, 6000));
  const double elapsed = seconds_since(start);

  std::ostringstream detail;
  detail << "max |numeric - exact|: s_max=8 -> " << coarse
         << " (bound 1e-3), s_max=12 -> " << fine << " (bound 1e-5), "
         << elapsed << " s (bound 30)";
  return {coarse <= 1e-3 && fine <= 1e-5 && elapsed < 30.0, detail.str()};
}

// --- criterion 5: AE bound and T_eps ------------------------------------

Outcome criterion5() {
  const std::vector<double> amplitudes = grid5();

  // exact <= bound wherever the bound is defined, for T >= 1. The margin
  // shrinks like exp(-2 pi T kappa), far below double rounding at large T,
  // so the comparison carries a 1e-9 relative allowance.
  double worst_excess = 0.0;
  for (double d0 : amplitudes) {
    for (double o0 : amplitudes) {
      if (d0 < o0) continue;
      for (double T : {1.0, 1.5, 2.0, 3.0, 5.0, 8.0, 12.0, 20.0}) {
        const double bound = ae_perr_bound(T, o0, d0);
        const double excess = ae_perr_exact(T, o0, d0) / bound - 1.0;
        worst_excess = std::max(worst_excess, excess);
      }
    }
  }

  // numeric plug-back at T = 1.01 T_eps
  double worst_ratio = 0.0;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    for (double d0 : amplitudes) {
      for (double o0 : amplitudes) {
        if (d0 < o0) continue;
        const double T = 1.01 * ae_t_epsilon(eps, d0, o0);
        const int steps = std::max(
            4000, static_cast<int>(2.0 * 8.0 * T * std::max(d0, o0) / 0.05));
        const StrategySpec spec = ae_spec(d0, o0, TimeGrid(-8.0, 8.0, steps));
        worst_ratio =
            std::max(worst_ratio, numeric_perr(spec, theta2(d0, o0), T) / eps);
      }
    }
  }

  std::ostringstream detail;
  detail << "max relative (exact/bound - 1) = " << worst_excess
         << " (allowance 1e-9), max numeric P_err / eps at 1.01 T_eps = "
         << worst_ratio << " (must be < 1)";
  return {worst_excess <= 1e-9 && worst_ratio < 1.0, detail.str()};
}

// --- criterion 6: AE oscillatory branch ---------------------------------

Outcome criterion6() {
  const TimeGrid grid(-12.0, 12.0, 8000);
  const std::vector<std::pair<double, double>> points{
      {0.5, 2.0}, {1.0, 2.0}, {0.5, 1.0}};

  double worst_shift = 0.0;
  double worst_envelope_excess = 0.0;
  for (const auto& [d0, o0] : points) {
    const StrategySpec spec = ae_spec(d0, o0, grid);
    auto perr = [&](double T) { return numeric_perr(spec, theta2(d0, o0), T); };

    const double root = std::sqrt(o0 * o0 - d0 * d0);
    for (int k = 0; k <= 2; ++k) {
      // golden-section minimum around the predicted zero
      const double t_pred = (k + 0.5) / root;
      double a = t_pred - 0.05, b = t_pred + 0.05;
      const double gr = 0.618033988749895;
      double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
      double f1 = perr(x1), f2 = perr(x2);
      while (b - a > 1e-5) {
        if (f1 < f2) {
          b = x2; x2 = x1; f2 = f1;
          x1 = b - gr * (b - a); f1 = perr(x1);
        } else {
          a = x1; x1 = x2; f1 = f2;
          x2 = a + gr * (b - a); f2 = perr(x2);
        }
      }
      worst_shift = std::max(worst_shift, std::abs(0.5 * (a + b) - t_pred));
    }

    // sech^2(pi delta0 T) envelope bounds the damped oscillation
    for (double T = 0.3; T <= 3.0; T += 0.1) {
      const double env = std::pow(1.0 / std::cosh(kPi * d0 * T), 2);
      worst_envelope_excess =
          std::max(worst_envelope_excess, perr(T) - env);
    }
  }

  std::ostringstream detail;
  detail << "max |T_min - T_pred| = " << worst_shift
         << " (bound 1e-3), max numeric excess over sech^2 envelope = "
         << worst_envelope_excess << " (slack 1e-4)";
  return {worst_shift <= 1e-3 && worst_envelope_excess <= 1e-4, detail.str()};
}

// --- criterion 7: Landau-Zener qualitative robustness -------------------

Outcome criterion7() {
  // Reading out in the instantaneous eigenbasis at the window edges
  // isolates the completed-crossing probability the asymptotic formula
  // describes; a bare-basis readout on a finite window is dominated by
  // the O(1/s_max) edge mismatch.
  auto lz_perr_framed = [&](double d0, double o0, double T) {
    const StrategySpec spec = lz_spec(d0, o0, T);
    const TimeGrid& grid = spec.grid;
    const ControlSignals signals = lz_controls(d0, o0, T);
    const AdiabaticFrame fs = adiabatic_frame_at(signals.delta(grid.s_start),
                                                 signals.omega(grid.s_start));
    const AdiabaticFrame fe = adiabatic_frame_at(signals.delta(grid.s_end),
                                                 signals.omega(grid.s_end));
    const QuantumState psi0(Eigen::VectorXcd(fs.rotation.entries().col(1)));
    const QuantumState target(Eigen::VectorXcd(fe.rotation.entries().col(1)));
    const QuantumState fin =
        propagate_final(make_plant(spec, T), theta2(d0, o0), psi0, grid, T);
    return error_probability(fin, target);
  };

  const double floor = 1e-9;
  bool monotone = true;
  bool decays = true;
  std::ostringstream notes;
  for (double d0 : {0.5, 1.0, 2.0}) {
    for (double o0 : {0.5, 1.0, 2.0}) {
      double prev = 2.0;
      double min_p = 2.0;
      for (double T = 1.0; T <= 20.0; T += 1.0) {
        const double p = lz_perr_framed(d0, o0, T);
        const bool ok = (p <= prev + 1e-12) || (p <= floor && prev <= floor);
        if (!ok) {
          monotone = false;
          notes << " [non-monotone at (" << d0 << "," << o0 << "), T=" << T
                << ": " << prev << " -> " << p << "]";
        }
        prev = p;
        min_p = std::min(min_p, p);
      }
      // assert the decay wherever the printed formula predicts it in range
      const double ratio = o0 * o0 / (d0 * d0);
      if (kPi * 20.0 * ratio >= -std::log(1e-3) && min_p > 1e-3) {
        decays = false;
        notes << " [no 1e-3 decay at (" << d0 << "," << o0 << ")]";
      }
    }
  }

  // the compare command reports the fitted slope alongside the printed one
  qsteer::cli::RunConfig config = qsteer::cli::parse_config(R"({
    "strategy": {"kind": "landau-zener", "delta0": 1.0, "omega0": 1.0,
                 "T": 2.0},
    "box": {"lower": [0.8, 0.8], "upper": [1.2, 1.2]},
    "resolution": [3, 3],
    "compare": {"t_min": 1.0, "t_max": 5.0, "t_points": 8}
  })");
  qsteer::cli::CliOverrides overrides;
  const auto csv = std::string("/tmp/qsteer_acceptance_lz.csv");
  overrides.output = csv;
  std::ostringstream out, err;
  const int rc = qsteer::cli::cmd_compare(config, overrides, out, err);
  bool fit_ok = rc == qsteer::cli::kOk;
  double fitted = 0.0, printed = 0.0;
  if (fit_ok) {
    const json j = json::parse(out.str());
    fit_ok = j.contains("lz_fit") && j["lz_fit"]["fitted_slope"].is_number();
    if (fit_ok) {
      fitted = j["lz_fit"]["fitted_slope"].get<double>();
      printed = j["lz_fit"]["printed_slope"].get<double>();
      fit_ok = fitted < 0.0;
    }
  }

  std::ostringstream detail;
  detail << "monotone decay in T: " << (monotone ? "yes" : "NO")
         << ", reaches 1e-3 where predicted: " << (decays ? "yes" : "NO")
         << ", compare fit slope " << fitted << " vs printed " << printed
         << " (exponent T-power intentionally not asserted)" << notes.str();
  return {monotone && decays && fit_ok, detail.str()};
}

// --- criterion 8: uncertainty-transfer identity -------------------------

Outcome criterion8() {
  std::mt19937 rng(481516);
  std::uniform_real_distribution<double> amp(0.1, 3.0);

  StrategySpec res = resonance_spec(TimeGrid(0.0, 1.0, 1000));
  StrategySpec ae = ae_spec(1.0, 1.0, TimeGrid(-8.0, 8.0, 2000));
  const Plant res_plant = make_plant(res, 1.0);
  const Plant ae_plant = make_plant(ae, 1.0);

  double worst_entry = 0.0;
  double worst_state = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::VectorXd theta = theta2(amp(rng), amp(rng));
    const Eigen::VectorXd theta_star = theta2(amp(rng), amp(rng));

    for (const auto* plant : {&res_plant, &ae_plant}) {
      const bool symmetric = plant == &ae_plant;
      const double t = symmetric
                           ? std::uniform_real_distribution<double>(-8, 8)(rng)
                           : std::uniform_real_distribution<double>(0, 1)(rng);
      const Eigen::MatrixXcd lhs =
          hamiltonian_at(*plant, theta, t).entries();
      Eigen::MatrixXcd rhs =
          plant->drift().entries() +
          transfer_uncertainty(*plant, theta, theta_star, t).entries();
      const Eigen::VectorXd u_star = plant->control_values(theta_star, t);
      for (std::size_t j = 0; j < plant->control_count(); ++j) {
        rhs += u_star(static_cast<Eigen::Index>(j)) *
               plant->control_ops()[j].entries();
      }
      worst_entry =
          std::max(worst_entry, (lhs - rhs).cwiseAbs().maxCoeff());
    }

    // dual propagation: original at theta vs perturbed plant at nominal
    const auto check_dual = [&](const Plant& plant, const TimeGrid& grid) {
      const QuantumState psi0 = QuantumState::basis(2, 0);
      const QuantumState direct =
          propagate_final(plant, theta, psi0, grid, 1.0);
      const QuantumState via_perturbed = propagate_final(
          perturbed_plant(plant, theta, theta_star), theta_star, psi0, grid,
          1.0);
      worst_state = std::max(worst_state,
                             (direct.amplitudes() - via_perturbed.amplitudes())
                                 .cwiseAbs()
                                 .maxCoeff());
    };
    check_dual(res_plant, res.grid);
    check_dual(ae_plant, ae.grid);
  }

  std::ostringstream detail;
  detail << "max elementwise reconstruction error = " << worst_entry
         << " (bound 1e-12), max dual-propagation state difference = "
         << worst_state << " (bound 1e-10)";
  return {worst_entry <= 1e-12 && worst_state <= 1e-10, detail.str()};
}

// --- criterion 9: frame equivalence -------------------------------------

Outcome criterion9() {
  const TimeGrid grid(-8.0, 8.0, 4000);
  double worst = 0.0;
  for (double a : {0.5, 1.0, 2.0}) {
    for (double T : {1.0, 5.0}) {
      const double diabatic =
          numeric_perr(ae_spec(a, a, grid), theta2(a, a), T);
      const ControlSignals signals = ae_controls(a, a);
      const Trajectory traj =
          propagate_adiabatic(signals, QuantumState::basis(2, 0), grid, T);
      const AdiabaticFrame end = adiabatic_frame_at(
          signals.delta(grid.s_end), signals.omega(grid.s_end));
      const QuantumState back = apply(end.rotation, traj.final_state());
      const double adiabatic =
          error_probability(back, QuantumState::basis(2, 1));
      worst = std::max(worst, std::abs(diabatic - adiabatic));
    }
  }
  std::ostringstream detail;
  detail << "max |diabatic - adiabatic| P_err = " << worst << " (bound 1e-6)";
  return {worst <= 1e-6, detail.str()};
}

// --- criterion 10: invariant suite ---------------------------------------

Outcome criterion10() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(1059);
  std::size_t cases = 0;
  bool ok = true;
  std::ostringstream notes;

  auto random_hermitian = [&](int n, double scale) {
    std::normal_distribution<double> gauss(0.0, scale);
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = {gauss(rng), gauss(rng)};
    return Eigen::MatrixXcd(0.5 * (a + a.adjoint().eval()));
  };
  auto random_state = [&](int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = {gauss(rng), gauss(rng)};
    return QuantumState::normalized(v);
  };

  // unitarity + norm preservation of expm_step
  for (int trial = 0; trial < 400; ++trial) {
    const int n = trial < 300 ? 2 : (trial < 360 ? 3 : 4);
    const Eigen::MatrixXcd h = random_hermitian(n, 2.0);
    const double dt = std::uniform_real_distribution<double>(-2, 2)(rng);
    const Eigen::MatrixXcd u = expm_step(HermitianOperator(h), dt).entries();
    const double defect =
        (u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n))
            .cwiseAbs()
            .maxCoeff();
    if (defect > 1e-10) {
      ok = false;
      notes << " [unitarity defect " << defect << "]";
    }
    const QuantumState psi = random_state(n);
    const double norm = (u * psi.amplitudes()).norm();
    if (std::abs(norm - 1.0) > 1e-12) ok = false;
    ++cases;
  }

  // propagation norm drift and P_err range
  for (int trial = 0; trial < 200; ++trial) {
    const double d0 = std::uniform_real_distribution<double>(0.1, 2.5)(rng);
    const double o0 = std::uniform_real_distribution<double>(0.1, 2.5)(rng);
    const double T = std::uniform_real_distribution<double>(0.2, 4.0)(rng);
    const StrategySpec spec = trial % 2 == 0
                                  ? ae_spec(d0, o0, TimeGrid(-8, 8, 300))
                                  : resonance_spec(TimeGrid(0, 1, 300));
    const QuantumState fin =
        propagate_final(make_plant(spec, T), theta2(d0, o0),
                        random_state(2), spec.grid, T);
    if (std::abs(fin.amplitudes().norm() - 1.0) > 1e-10) ok = false;
    const double p = error_probability(fin, random_state(2));
    if (p < 0.0 || p > 1.0) ok = false;
    ++cases;
  }

  // robustness-set monotonicity over random epsilon pairs
  {
    const StrategySpec spec = resonance_spec(TimeGrid(0, 1, 200));
    Eigen::VectorXd lo(2), hi(2);
    lo << 0.3, 0.7;
    hi << 3.2, 1.3;
    const ErrorMap map = sweep(spec, ParameterBox(lo, hi), {12, 12}, 1.0,
                               QuantumState::basis(2, 0),
                               QuantumState::basis(2, 1));
    for (int trial = 0; trial < 4; ++trial) {
      double e1 = std::uniform_real_distribution<double>(0.0, 0.99)(rng);
      double e2 = std::uniform_real_distribution<double>(0.0, 0.99)(rng);
      if (e1 > e2) std::swap(e1, e2);
      const RobustnessSet small = robustness_set(map, e1);
      const RobustnessSet large = robustness_set(map, e2);
      for (std::size_t cell = 0; cell < map.cell_count(); ++cell) {
        if (small.inside[cell] && !large.inside[cell]) {
          ok = false;
          notes << " [monotonicity broken]";
        }
        ++cases;
      }
    }
  }

  // sweep determinism across worker counts
  {
    const StrategySpec spec = resonance_spec(TimeGrid(0, 1, 300));
    Eigen::VectorXd lo(2), hi(2);
    lo << 0.5, 0.7;
    hi << 3.0, 1.3;
    const ParameterBox box(lo, hi);
    const ErrorMap base = sweep(spec, box, {16, 16}, 1.0,
                                QuantumState::basis(2, 0),
                                QuantumState::basis(2, 1), 1);
    for (int threads : {2, 4, 8}) {
      const ErrorMap again = sweep(spec, box, {16, 16}, 1.0,
                                   QuantumState::basis(2, 0),
                                   QuantumState::basis(2, 1), threads);
      if (std::memcmp(base.values.data(), again.values.data(),
                      base.values.size() * sizeof(double)) != 0) {
        ok = false;
        notes << " [sweep not deterministic at " << threads << " threads]";
      }
      ++cases;
    }
  }

  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << cases << " randomized cases (need >= 1000), " << elapsed
         << " s (bound 60)" << notes.str();
  return {ok && cases >= 1000 && elapsed < 60.0, detail.str()};
}

struct Criterion {
  int index;
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "resonance analytic agreement", criterion1},
      {2, "resonance zeros", criterion2},
      {3, "resonance worst case on the uncertainty box", criterion3},
      {4, "Allen-Eberly exact agreement", criterion4},
      {5, "Allen-Eberly bound and T_eps", criterion5},
      {6, "Allen-Eberly oscillatory branch", criterion6},
      {7, "Landau-Zener qualitative robustness", criterion7},
      {8, "uncertainty-transfer identity", criterion8},
      {9, "frame equivalence", criterion9},
      {10, "invariant suite", criterion10},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::string selection = argc > 1 ? argv[1] : "all";
  int failures = 0;
  for (const Criterion& c : criteria()) {
    if (selection != "all" && std::to_string(c.index) != selection) continue;
    const Outcome outcome = c.run();
    std::printf("[%s] criterion %d: %s (%s)\n",
                outcome.pass ? "PASS" : "FAIL", c.index, c.title,
                outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
