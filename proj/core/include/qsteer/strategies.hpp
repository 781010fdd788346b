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

#pragma once

#include <string>

#include "qsteer/propagator.hpp"

namespace qsteer {

enum class StrategyKind { resonance, landau_zener, allen_eberly, custom };

std::string to_string(StrategyKind kind);

/// Fixed pulse envelope of scaled time.
struct Envelope {
  std::function<double(double)> value;
  std::string name;
};

/// Built-in envelope catalog: "const" (1), "sin" (sin(pi s)), "tanh",
/// "sech", "linear" (s). Throws InvalidInputError on unknown names.
Envelope envelope_by_name(const std::string& name);
Envelope constant_envelope();

/// A named two-level steering strategy with amplitude parameters and a
/// scaled-time horizon. The swept parameter vector theta is
///   (delta0, omega0)      for landau-zener / allen-eberly / custom,
///   (omega0, pulse area)  for resonance.
struct StrategySpec {
  StrategyKind kind = StrategyKind::resonance;
  double delta0 = 0.0;  ///< detuning amplitude, >= 0
  double omega0 = 0.0;  ///< Rabi amplitude, >= 0
  Envelope envelope = constant_envelope();        ///< Lambda, the Omega envelope
  Envelope delta_envelope = constant_envelope();  ///< Phi, custom kind only
  double horizon = 1.0;  ///< T > 0
  TimeGrid grid{0.0, 1.0, 4000};

  /// Throws InvalidInputError with a description on bad fields.
  void validate() const;
};

/// Default scaled-time grid: [0, 1] for resonance/custom, [-8, 8] for the
/// adiabatic strategies; 4000 steps.
TimeGrid default_grid(StrategyKind kind);

/// Landau-Zener grid wide enough for a clean crossing at the given
/// parameters: the sweep region |s| <~ T omega0 / delta0^2 must sit well
/// inside the window, and the truncated-tail amplitude
/// T omega0 / (4 delta0^4 s_max^3) is pushed below 1e-6. Steps scale to
/// hold the per-step phase near 0.1 rad. Falls back to the default grid
/// when that is already wide enough.
TimeGrid lz_auto_grid(double delta0, double omega0, double T);

/// Nominal parameter vector theta* of a strategy; the resonance area
/// component is the envelope integral over the spec grid.
Eigen::VectorXd nominal_theta(const StrategySpec& spec);

/// Two-level plant (H1, H2) = (sigma_z, sigma_x) with controls
/// u1 = delta(theta, s), u2 = omega(theta, s) for the given strategy.
/// T is the horizon the LZ detuning slope is tied to.
Plant make_plant(const StrategySpec& spec, double T);

/// Control path at a fixed parameter value, with derivatives where the
/// strategy provides them in closed form.
ControlSignals signals_at(const StrategySpec& spec,
                          const Eigen::VectorXd& theta, double T);

/// Closed-form error probability of a built-in strategy at theta;
/// InvalidInputError for the custom kind.
double analytic_perr(const StrategySpec& spec, const Eigen::VectorXd& theta,
                     double T);

/// Envelope integral over the grid by composite Simpson quadrature,
/// refined until the rule is converged below 1e-10.
double envelope_area(const Envelope& envelope, const TimeGrid& grid);

// --- resonance (delta = 0, omega = omega0 Lambda(s)) ---

/// delta = 0, omega(s) = omega0 Lambda(s); no derivative slots.
ControlSignals resonance_controls(double omega0, const Envelope& lambda);

/// P_err = cos^2(omega0 T A), A the Omega-pulse area.
double resonance_perr(double T, double omega0, double area);

/// k-th zero in omega0 at fixed (T, A): (k + 1/2) pi / (T A).
double resonance_zero(double T, double area, int k);

/// Worst error over the box [omega0* +- beta] x [A* +- sigma] under the
/// monotonicity premise: cos^2(T (omega0* + beta) (A* + sigma)).
double resonance_pmax(double omega0_star, double area_star, double beta,
                      double sigma, double T);

// --- Landau-Zener (delta = (delta0^2/T) s, omega = omega0) ---

ControlSignals lz_controls(double delta0, double omega0, double T);

/// The Landau-Zener estimate exactly as printed,
/// exp(-pi T omega0^2 / delta0^2). A standard analysis of these control
/// functions in scaled time gives the exponent a T^2 dependence instead;
/// the numeric propagator is the arbiter and the compare command reports a
/// fitted slope next to this formula's.
double lz_perr_estimate(double T, double omega0, double delta0);

// --- Allen-Eberly (delta = delta0 tanh(s), omega = omega0 sech(s)) ---

/// Signed tanh detuning (the zero-crossing form) with exact derivatives.
ControlSignals ae_controls(double delta0, double omega0);

/// Exact error probability:
///   cosh^2(pi T sqrt(delta0^2 - omega0^2)) sech^2(pi delta0 T), delta0 >= omega0
///   cos^2 (pi T sqrt(omega0^2 - delta0^2)) sech^2(pi delta0 T), omega0 > delta0.
/// Both branches meet at sech^2(pi delta0 T); evaluated in log space to
/// survive large T.
double ae_perr_exact(double T, double omega0, double delta0);

/// 4 exp(-2 pi T (delta0 - sqrt(delta0^2 - omega0^2))), valid for
/// delta0 >= omega0.
double ae_perr_bound(double T, double omega0, double delta0);

/// Smallest horizon guaranteeing P_err < eps for all larger T,
///   max(-ln(eps/4) / (2 pi (delta0 - sqrt(delta0^2 - omega0^2))),
///       -ln(eps) / (2 pi delta0)),
/// for delta0 >= omega0 > 0 and eps in (0, 1).
double ae_t_epsilon(double epsilon, double delta0, double omega0);

}  // namespace qsteer
