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

#include "qsteer/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qsteer {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Matrix2cd sigma_x_matrix() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd sigma_z_matrix() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw InvalidInputError(std::string(name) + " must be finite");
  }
}

// log(cosh(x)), overflow-free for any x.
double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

// Composite Simpson with n intervals (n even).
double simpson(const std::function<double(double)>& f, double a, double b,
               int n) {
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  }
  return sum * h / 3.0;
}

double theta_component(const Eigen::VectorXd& theta, Eigen::Index k) {
  if (theta.size() != 2) {
    throw InvalidInputError("built-in strategies take 2 parameters, got " +
                            std::to_string(theta.size()));
  }
  return theta(k);
}

}  // namespace

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::resonance:
      return "resonance";
    case StrategyKind::landau_zener:
      return "landau-zener";
    case StrategyKind::allen_eberly:
      return "allen-eberly";
    case StrategyKind::custom:
      return "custom";
  }
  return "unknown";
}

Envelope constant_envelope() {
  return Envelope{[](double) { return 1.0; }, "const"};
}

Envelope envelope_by_name(const std::string& name) {
  if (name == "const") return constant_envelope();
  if (name == "sin") {
    return Envelope{[](double s) { return std::sin(kPi * s); }, "sin"};
  }
  if (name == "tanh") {
    return Envelope{[](double s) { return std::tanh(s); }, "tanh"};
  }
  if (name == "sech") {
    return Envelope{[](double s) { return 1.0 / std::cosh(s); }, "sech"};
  }
  if (name == "linear") {
    return Envelope{[](double s) { return s; }, "linear"};
  }
  throw InvalidInputError("unknown envelope '" + name +
                          "' (known: const, sin, tanh, sech, linear)");
}

void StrategySpec::validate() const {
  require_finite(delta0, "delta0");
  require_finite(omega0, "omega0");
  if (delta0 < 0.0 || omega0 < 0.0) {
    throw InvalidInputError("amplitude parameters must be nonnegative");
  }
  require_finite(horizon, "horizon");
  if (!(horizon > 0.0)) {
    throw InvalidInputError("horizon T must be positive");
  }
  if (!envelope.value || !delta_envelope.value) {
    throw InvalidInputError("strategy envelopes must be callable");
  }
}

TimeGrid default_grid(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::landau_zener:
    case StrategyKind::allen_eberly:
      return TimeGrid(-8.0, 8.0, 4000);
    default:
      return TimeGrid(0.0, 1.0, 4000);
  }
}

TimeGrid lz_auto_grid(double delta0, double omega0, double T) {
  require_finite(delta0, "delta0");
  require_finite(omega0, "omega0");
  require_finite(T, "T");
  const TimeGrid fallback = default_grid(StrategyKind::landau_zener);
  if (delta0 <= 0.0 || omega0 <= 0.0 || T <= 0.0) return fallback;

  const double lambda = delta0 * delta0;  // scaled sweep rate
  const double w = T * omega0;            // scaled coupling
  const double crossing = 3.0 * w / lambda;
  const double tail = std::cbrt(w / (4.0 * lambda * lambda * 1e-6));
  const double smax = std::max({8.0, crossing, tail});

  const double gnorm = std::hypot(lambda * smax, w);
  const double wanted = std::ceil(2.0 * smax * gnorm / 0.1);
  const int steps =
      static_cast<int>(std::clamp(wanted, 4000.0, 8.0e6));
  return TimeGrid(-smax, smax, steps);
}

double envelope_area(const Envelope& envelope, const TimeGrid& grid) {
  if (!envelope.value) {
    throw InvalidInputError("envelope must be callable");
  }
  int n = 64;
  double coarse = simpson(envelope.value, grid.s_start, grid.s_end, n);
  for (; n <= (1 << 22); n *= 2) {
    const double fine =
        simpson(envelope.value, grid.s_start, grid.s_end, 2 * n);
    if (std::abs(fine - coarse) <= 1e-10) return fine;
    coarse = fine;
  }
  return coarse;
}

Eigen::VectorXd nominal_theta(const StrategySpec& spec) {
  spec.validate();
  Eigen::VectorXd theta(2);
  if (spec.kind == StrategyKind::resonance) {
    theta << spec.omega0, envelope_area(spec.envelope, spec.grid);
  } else {
    theta << spec.delta0, spec.omega0;
  }
  return theta;
}

Plant make_plant(const StrategySpec& spec, double T) {
  spec.validate();
  require_finite(T, "T");
  if (!(T > 0.0)) {
    throw InvalidInputError("horizon T must be positive");
  }

  std::vector<HermitianOperator> ops;
  ops.emplace_back(sigma_z_matrix());
  ops.emplace_back(sigma_x_matrix());

  ControlFunction delta_fn, omega_fn;
  switch (spec.kind) {
    case StrategyKind::resonance: {
      // theta = (omega0, area): area uncertainty scales the fixed envelope.
      const double base_area = envelope_area(spec.envelope, spec.grid);
      if (base_area == 0.0) {
        throw InvalidInputError(
            "resonance envelope has zero area; pulse-area scaling undefined");
      }
      delta_fn = {[](const Eigen::VectorXd&, double) { return 0.0; },
                  "delta(resonance)"};
      auto lambda = spec.envelope.value;
      omega_fn = {[lambda, base_area](const Eigen::VectorXd& theta,
                                      double s) {
                    return theta_component(theta, 0) *
                           (theta_component(theta, 1) / base_area) *
                           lambda(s);
                  },
                  "omega(resonance:" + spec.envelope.name + ")"};
      break;
    }
    case StrategyKind::landau_zener: {
      delta_fn = {[T](const Eigen::VectorXd& theta, double s) {
                    const double d0 = theta_component(theta, 0);
                    return d0 * d0 / T * s;
                  },
                  "delta(landau-zener)"};
      omega_fn = {[](const Eigen::VectorXd& theta, double) {
                    return theta_component(theta, 1);
                  },
                  "omega(landau-zener)"};
      break;
    }
    case StrategyKind::allen_eberly: {
      delta_fn = {[](const Eigen::VectorXd& theta, double s) {
                    return theta_component(theta, 0) * std::tanh(s);
                  },
                  "delta(allen-eberly)"};
      omega_fn = {[](const Eigen::VectorXd& theta, double s) {
                    return theta_component(theta, 1) / std::cosh(s);
                  },
                  "omega(allen-eberly)"};
      break;
    }
    case StrategyKind::custom: {
      auto phi = spec.delta_envelope.value;
      auto lambda = spec.envelope.value;
      delta_fn = {[phi](const Eigen::VectorXd& theta, double s) {
                    return theta_component(theta, 0) * phi(s);
                  },
                  "delta(custom:" + spec.delta_envelope.name + ")"};
      omega_fn = {[lambda](const Eigen::VectorXd& theta, double s) {
                    return theta_component(theta, 1) * lambda(s);
                  },
                  "omega(custom:" + spec.envelope.name + ")"};
      break;
    }
  }

  return Plant(HermitianOperator::zero(2), std::move(ops),
               {std::move(delta_fn), std::move(omega_fn)});
}

ControlSignals signals_at(const StrategySpec& spec,
                          const Eigen::VectorXd& theta, double T) {
  spec.validate();
  if (theta.size() != 2) {
    throw InvalidInputError("built-in strategies take 2 parameters");
  }
  switch (spec.kind) {
    case StrategyKind::resonance: {
      const double base_area = envelope_area(spec.envelope, spec.grid);
      if (base_area == 0.0) {
        throw InvalidInputError("resonance envelope has zero area");
      }
      Envelope scaled{spec.envelope.value, spec.envelope.name};
      ControlSignals signals =
          resonance_controls(theta(0) * theta(1) / base_area, scaled);
      return signals;
    }
    case StrategyKind::landau_zener:
      return lz_controls(theta(0), theta(1), T);
    case StrategyKind::allen_eberly:
      return ae_controls(theta(0), theta(1));
    case StrategyKind::custom: {
      auto phi = spec.delta_envelope.value;
      auto lambda = spec.envelope.value;
      const double d0 = theta(0), o0 = theta(1);
      ControlSignals signals;
      signals.delta = [phi, d0](double s) { return d0 * phi(s); };
      signals.omega = [lambda, o0](double s) { return o0 * lambda(s); };
      return signals;
    }
  }
  throw InvalidInputError("unknown strategy kind");
}

double analytic_perr(const StrategySpec& spec, const Eigen::VectorXd& theta,
                     double T) {
  if (theta.size() != 2) {
    throw InvalidInputError("built-in strategies take 2 parameters");
  }
  switch (spec.kind) {
    case StrategyKind::resonance:
      return resonance_perr(T, theta(0), theta(1));
    case StrategyKind::landau_zener:
      return lz_perr_estimate(T, theta(1), theta(0));
    case StrategyKind::allen_eberly:
      return ae_perr_exact(T, theta(1), theta(0));
    case StrategyKind::custom:
      break;
  }
  throw InvalidInputError(
      "no closed-form error probability for the custom strategy");
}

ControlSignals resonance_controls(double omega0, const Envelope& lambda) {
  require_finite(omega0, "omega0");
  if (!lambda.value) {
    throw InvalidInputError("envelope must be callable");
  }
  ControlSignals signals;
  signals.delta = [](double) { return 0.0; };
  auto fn = lambda.value;
  signals.omega = [fn, omega0](double s) { return omega0 * fn(s); };
  return signals;
}

double resonance_perr(double T, double omega0, double area) {
  require_finite(T, "T");
  require_finite(omega0, "omega0");
  require_finite(area, "area");
  const double c = std::cos(omega0 * T * area);
  return c * c;
}

double resonance_zero(double T, double area, int k) {
  require_finite(T, "T");
  require_finite(area, "area");
  if (k < 0) {
    throw InvalidInputError("zero index k must be nonnegative");
  }
  if (!(T * area > 0.0)) {
    throw InvalidInputError("resonance zeros need T * area > 0");
  }
  return (k + 0.5) * kPi / (T * area);
}

double resonance_pmax(double omega0_star, double area_star, double beta,
                      double sigma, double T) {
  require_finite(omega0_star, "omega0_star");
  require_finite(area_star, "area_star");
  require_finite(beta, "beta");
  require_finite(sigma, "sigma");
  require_finite(T, "T");
  const double c = std::cos(T * (omega0_star + beta) * (area_star + sigma));
  return c * c;
}

ControlSignals lz_controls(double delta0, double omega0, double T) {
  require_finite(delta0, "delta0");
  require_finite(omega0, "omega0");
  require_finite(T, "T");
  if (!(T > 0.0)) {
    throw InvalidInputError("Landau-Zener controls need T > 0");
  }
  const double slope = delta0 * delta0 / T;
  ControlSignals signals;
  signals.delta = [slope](double s) { return slope * s; };
  signals.omega = [omega0](double) { return omega0; };
  signals.ddelta = [slope](double) { return slope; };
  signals.domega = [](double) { return 0.0; };
  return signals;
}

double lz_perr_estimate(double T, double omega0, double delta0) {
  require_finite(T, "T");
  require_finite(omega0, "omega0");
  if (!(delta0 > 0.0) || !std::isfinite(delta0)) {
    throw InvalidInputError(
        "the Landau-Zener estimate needs delta0 > 0 (the robustness set "
        "excludes the quadrant boundary)");
  }
  return std::exp(-kPi * T * omega0 * omega0 / (delta0 * delta0));
}

ControlSignals ae_controls(double delta0, double omega0) {
  require_finite(delta0, "delta0");
  require_finite(omega0, "omega0");
  ControlSignals signals;
  signals.delta = [delta0](double s) { return delta0 * std::tanh(s); };
  signals.omega = [omega0](double s) { return omega0 / std::cosh(s); };
  signals.ddelta = [delta0](double s) {
    const double sech = 1.0 / std::cosh(s);
    return delta0 * sech * sech;
  };
  signals.domega = [omega0](double s) {
    return -omega0 * std::tanh(s) / std::cosh(s);
  };
  return signals;
}

double ae_perr_exact(double T, double omega0, double delta0) {
  require_finite(omega0, "omega0");
  require_finite(delta0, "delta0");
  require_finite(T, "T");
  if (!(T > 0.0)) {
    throw InvalidInputError("ae_perr_exact needs T > 0");
  }
  const double d = delta0 * delta0 - omega0 * omega0;
  if (d >= 0.0) {
    // cosh^2/cosh^2 in log space; the exponent is <= 0 because
    // sqrt(d) <= delta0.
    const double kappa = std::sqrt(d);
    const double log_p =
        2.0 * (log_cosh(kPi * T * kappa) - log_cosh(kPi * delta0 * T));
    return std::exp(log_p);
  }
  const double c = std::cos(kPi * T * std::sqrt(-d));
  const double sech2 = std::exp(-2.0 * log_cosh(kPi * delta0 * T));
  return c * c * sech2;
}

double ae_perr_bound(double T, double omega0, double delta0) {
  require_finite(omega0, "omega0");
  require_finite(delta0, "delta0");
  require_finite(T, "T");
  if (!(T > 0.0)) {
    throw InvalidInputError("ae_perr_bound needs T > 0");
  }
  if (delta0 < omega0 || omega0 < 0.0) {
    throw InvalidInputError(
        "ae_perr_bound is defined for delta0 >= omega0 >= 0");
  }
  if (delta0 == 0.0) return 4.0;  // omega0 == 0 as well; gap is zero
  const double kappa = std::sqrt(delta0 * delta0 - omega0 * omega0);
  // delta0 - kappa without cancellation.
  const double gap = omega0 * omega0 / (delta0 + kappa);
  return 4.0 * std::exp(-2.0 * kPi * T * gap);
}

double ae_t_epsilon(double epsilon, double delta0, double omega0) {
  require_finite(epsilon, "epsilon");
  require_finite(delta0, "delta0");
  require_finite(omega0, "omega0");
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw InvalidInputError("epsilon must lie in (0, 1)");
  }
  if (!(omega0 > 0.0) || delta0 < omega0) {
    throw InvalidInputError(
        "ae_t_epsilon is defined for delta0 >= omega0 > 0");
  }
  const double kappa = std::sqrt(delta0 * delta0 - omega0 * omega0);
  const double gap = omega0 * omega0 / (delta0 + kappa);
  const double first = -std::log(epsilon / 4.0) / (2.0 * kPi * gap);
  const double second = -std::log(epsilon) / (2.0 * kPi * delta0);
  return std::max(first, second);
}

}  // namespace qsteer
