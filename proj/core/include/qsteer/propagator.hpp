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

#include <functional>
#include <vector>

#include "qsteer/plant.hpp"

namespace qsteer {

/// Uniform grid in scaled time s = t/T.
struct TimeGrid {
  double s_start;
  double s_end;
  int steps;

  TimeGrid(double s_start, double s_end, int steps);

  double h() const noexcept { return (s_end - s_start) / steps; }
  double node(int k) const noexcept { return s_start + k * h(); }
  double midpoint(int k) const noexcept { return s_start + (k + 0.5) * h(); }
};

enum class Frame { diabatic, adiabatic };

/// States along a grid; states[k] lives at grid.node(k). For adiabatic
/// trajectories the states are expressed in the instantaneous eigenbasis
/// (states[0] is the supplied diabatic state rotated into the frame at
/// s_start).
struct Trajectory {
  TimeGrid grid;
  std::vector<QuantumState> states;
  Frame frame;

  const QuantumState& final_state() const { return states.back(); }
};

/// Instantaneous eigenframe of the two-level Hamiltonian
/// H = delta sigma_z + omega sigma_x.
struct AdiabaticFrame {
  UnitaryOperator rotation;  ///< U(s); columns are the adiabatic states.
  double energy;             ///< eps = sqrt(delta^2 + omega^2) >= 0
  double mixing_angle;       ///< eta = atan2(omega, delta) / 2, in (-pi/2, pi/2]
};

/// Two-level control path (delta(s), omega(s)) with scaled-time
/// derivatives; the derivative slots may be left empty when no
/// adiabatic-frame propagation is needed.
struct ControlSignals {
  std::function<double(double)> delta;
  std::function<double(double)> omega;
  std::function<double(double)> ddelta;
  std::function<double(double)> domega;
};

/// Integrates i d|psi>/ds = T H(s) |psi> with midpoint-exponential
/// (second-order Magnus) steps
///   psi_{k+1} = exp(-i T H(s_k + h/2) h) psi_k,
/// exactly unitary per step. Global error O(h^2) for smooth controls;
/// accuracy is bought with steps, never with renormalization tricks.
Trajectory propagate(const Plant& plant, const Eigen::VectorXd& theta,
                     const QuantumState& psi0, const TimeGrid& grid, double T);

/// Same stepping, final state only (the sweep hot path).
QuantumState propagate_final(const Plant& plant, const Eigen::VectorXd& theta,
                             const QuantumState& psi0, const TimeGrid& grid,
                             double T);

/// Frame data at one point of the control path. Throws
/// DegeneratePointError at (0, 0), where the mixing angle is undefined.
AdiabaticFrame adiabatic_frame_at(double delta, double omega);

/// Mixing-angle derivative gamma = d(eta)/ds
///   = (delta * domega - omega * ddelta) / (2 (delta^2 + omega^2)),
/// the nonadiabatic coupling in the rotated frame.
double gamma_coupling(double delta, double omega, double ddelta,
                      double domega);

/// Integrates the adiabatic-frame equation
///   i d|phi>/ds = [[T eps, i gamma], [-i gamma, -T eps]] |phi>
/// with the same midpoint-exponential scheme (the generator is Hermitian,
/// so unitary stepping applies unchanged). psi0 is given in the diabatic
/// basis and is rotated into the frame at s_start; rotating the final
/// state back through U(s_end) reproduces the diabatic result. Throws
/// DegeneratePointError identifying s if the path hits (0, 0) on the grid.
Trajectory propagate_adiabatic(const ControlSignals& signals,
                               const QuantumState& psi0, const TimeGrid& grid,
                               double T);

}  // namespace qsteer
