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

#include "qsteer/propagator.hpp"

#include <cmath>
#include <optional>

namespace qsteer {

namespace {

constexpr double kTrajectoryNormTolerance = 1e-10;

using Complex = std::complex<double>;
const Complex kI{0.0, 1.0};

QuantumState checked_state(Eigen::VectorXcd raw) {
  const double drift = std::abs(raw.norm() - 1.0);
  if (!(drift <= kTrajectoryNormTolerance)) {
    throw NumericError("propagated state norm drifted by " +
                       std::to_string(drift) + " (> 1e-10)");
  }
  return QuantumState::normalized(std::move(raw));
}

/// Shared stepping core. on_node(k, psi) is called for k = 0..steps with
/// the raw state at grid.node(k); generator(s) must return the scaled
/// Hamiltonian T*H(s) evaluated at midpoints.
template <typename Generator, typename OnNode>
void step_loop(const QuantumState& psi0, const TimeGrid& grid,
               Generator&& generator, OnNode&& on_node) {
  Eigen::VectorXcd psi = psi0.amplitudes();
  on_node(0, psi);
  const double h = grid.h();
  const bool two_level = psi.size() == 2;
  for (int k = 0; k < grid.steps; ++k) {
    const double s = grid.midpoint(k);
    if (two_level) {
      Eigen::Matrix2cd g = generator(s);
      const detail::PauliCoeffs c = detail::pauli_coeffs(g);
      psi = detail::pauli_step(c.c0, c.cx, c.cy, c.cz, h) * psi;
    } else {
      psi = detail::expm_dense(generator(s), h) * psi;
    }
    on_node(k + 1, psi);
  }
}

/// Plant generator T*H(s) with the n = 2 fast path: fixed-size operator
/// copies, no heap traffic per step.
class PlantGenerator {
 public:
  PlantGenerator(const Plant& plant, const Eigen::VectorXd& theta, double T)
      : plant_(plant), theta_(theta), scale_(T) {
    if (plant.dim() == 2) {
      drift2_ = plant.drift().entries();
      ops2_.reserve(plant.control_ops().size());
      for (const auto& op : plant.control_ops()) {
        ops2_.push_back(op.entries());
      }
    }
  }

  Eigen::Matrix2cd two_level_at(double s) const {
    Eigen::Matrix2cd h = drift2_;
    if (plant_.drift_offset()) {
      h += plant_.drift_offset()(s);
    }
    for (std::size_t j = 0; j < ops2_.size(); ++j) {
      const double u = plant_.controls()[j].evaluate(theta_, s);
      if (!std::isfinite(u)) {
        throw ControlEvaluationError(j, s);
      }
      h += u * ops2_[j];
    }
    return scale_ * h;
  }

  Eigen::MatrixXcd dense_at(double s) const {
    const Eigen::VectorXd u = plant_.control_values(theta_, s);
    Eigen::MatrixXcd h = plant_.drift_at(s);
    for (std::size_t j = 0; j < plant_.control_count(); ++j) {
      h += u(static_cast<Eigen::Index>(j)) *
           plant_.control_ops()[j].entries();
    }
    return scale_ * h;
  }

 private:
  const Plant& plant_;
  const Eigen::VectorXd& theta_;
  double scale_;
  Eigen::Matrix2cd drift2_;
  std::vector<Eigen::Matrix2cd> ops2_;
};

void check_propagation_args(const Plant& plant, const QuantumState& psi0,
                            double T) {
  if (plant.dim() != psi0.dim()) {
    throw InvalidInputError("plant dimension " + std::to_string(plant.dim()) +
                            " does not match state dimension " +
                            std::to_string(psi0.dim()));
  }
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw InvalidInputError("horizon T must be positive and finite");
  }
}

}  // namespace

TimeGrid::TimeGrid(double s_start, double s_end, int steps)
    : s_start(s_start), s_end(s_end), steps(steps) {
  if (!std::isfinite(s_start) || !std::isfinite(s_end) ||
      !(s_start < s_end)) {
    throw InvalidInputError("time grid needs s_start < s_end (finite)");
  }
  if (steps < 1) {
    throw InvalidInputError("time grid needs at least one step");
  }
}

Trajectory propagate(const Plant& plant, const Eigen::VectorXd& theta,
                     const QuantumState& psi0, const TimeGrid& grid,
                     double T) {
  check_propagation_args(plant, psi0, T);
  PlantGenerator gen(plant, theta, T);

  std::vector<QuantumState> states;
  states.reserve(grid.steps + 1);
  auto on_node = [&](int k, const Eigen::VectorXcd& psi) {
    states.push_back(k == 0 ? psi0 : checked_state(psi));
  };
  if (plant.dim() == 2) {
    step_loop(psi0, grid, [&](double s) { return gen.two_level_at(s); },
              on_node);
  } else {
    step_loop(psi0, grid, [&](double s) { return gen.dense_at(s); }, on_node);
  }
  return Trajectory{grid, std::move(states), Frame::diabatic};
}

QuantumState propagate_final(const Plant& plant, const Eigen::VectorXd& theta,
                             const QuantumState& psi0, const TimeGrid& grid,
                             double T) {
  check_propagation_args(plant, psi0, T);
  PlantGenerator gen(plant, theta, T);

  std::optional<QuantumState> last;
  auto on_node = [&](int k, const Eigen::VectorXcd& psi) {
    if (k == grid.steps) last = checked_state(psi);
  };
  if (plant.dim() == 2) {
    step_loop(psi0, grid, [&](double s) { return gen.two_level_at(s); },
              on_node);
  } else {
    step_loop(psi0, grid, [&](double s) { return gen.dense_at(s); }, on_node);
  }
  return *last;
}

AdiabaticFrame adiabatic_frame_at(double delta, double omega) {
  if (!std::isfinite(delta) || !std::isfinite(omega)) {
    throw InvalidInputError("adiabatic frame needs finite (delta, omega)");
  }
  const double energy = std::hypot(delta, omega);
  if (energy == 0.0) {
    throw DegeneratePointError();
  }
  // atan2 keeps eta continuous along paths crossing delta = 0, where a
  // plain arctan(omega/delta) jumps branches.
  const double eta = 0.5 * std::atan2(omega, delta);
  Eigen::Matrix2cd rotation;
  rotation << std::cos(eta), -std::sin(eta), std::sin(eta), std::cos(eta);
  return AdiabaticFrame{UnitaryOperator(rotation), energy, eta};
}

double gamma_coupling(double delta, double omega, double ddelta,
                      double domega) {
  if (!std::isfinite(delta) || !std::isfinite(omega) ||
      !std::isfinite(ddelta) || !std::isfinite(domega)) {
    throw InvalidInputError("gamma_coupling needs finite inputs");
  }
  const double r2 = delta * delta + omega * omega;
  if (r2 == 0.0) {
    throw DegeneratePointError();
  }
  return 0.5 * (delta * domega - omega * ddelta) / r2;
}

Trajectory propagate_adiabatic(const ControlSignals& signals,
                               const QuantumState& psi0, const TimeGrid& grid,
                               double T) {
  if (!signals.delta || !signals.omega || !signals.ddelta ||
      !signals.domega) {
    throw InvalidInputError(
        "adiabatic propagation needs delta, omega and both derivatives");
  }
  if (psi0.dim() != 2) {
    throw InvalidInputError("adiabatic frame tools are two-level only");
  }
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw InvalidInputError("horizon T must be positive and finite");
  }

  // Rotate the diabatic initial state into the frame at s_start.
  const AdiabaticFrame start = [&] {
    try {
      return adiabatic_frame_at(signals.delta(grid.s_start),
                                signals.omega(grid.s_start));
    } catch (const DegeneratePointError&) {
      throw DegeneratePointError(grid.s_start);
    }
  }();
  const QuantumState phi0 = apply(start.rotation.adjoint(), psi0);

  auto generator = [&](double s) -> Eigen::Matrix2cd {
    const double d = signals.delta(s);
    const double o = signals.omega(s);
    const double r2 = d * d + o * o;
    if (r2 == 0.0) {
      throw DegeneratePointError(s);
    }
    const double eps = std::sqrt(r2);
    const double gamma =
        0.5 * (d * signals.domega(s) - o * signals.ddelta(s)) / r2;
    Eigen::Matrix2cd g;
    g(0, 0) = T * eps;
    g(0, 1) = kI * gamma;
    g(1, 0) = -kI * gamma;
    g(1, 1) = -T * eps;
    return g;
  };

  std::vector<QuantumState> states;
  states.reserve(grid.steps + 1);
  step_loop(phi0, grid, generator, [&](int k, const Eigen::VectorXcd& psi) {
    states.push_back(k == 0 ? phi0 : checked_state(psi));
  });
  return Trajectory{grid, std::move(states), Frame::adiabatic};
}

}  // namespace qsteer
