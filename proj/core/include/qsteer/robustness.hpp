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

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "qsteer/strategies.hpp"

namespace qsteer {

/// A sweep cell that failed to evaluate (value stored as NaN).
struct SweepCellError {
  std::size_t cell;
  std::string message;
};

/// Error probabilities over an inclusive grid on a 2-parameter box.
/// Values are row-major with axis 1 outer: index = i1 * resolution[1] + i2.
/// Axes with resolution 1 sample the box midpoint (a one-point inclusive
/// linspace cannot include both corners).
struct ErrorMap {
  ParameterBox box;
  std::array<int, 2> resolution;
  std::vector<double> values;
  double horizon;        ///< T
  std::string strategy;  ///< descriptor of the swept strategy
  std::vector<SweepCellError> errors;

  double axis_value(int axis, int index) const;
  Eigen::VectorXd theta_at(int i1, int i2) const;
  double value_at(int i1, int i2) const;
  std::size_t cell_count() const noexcept { return values.size(); }
};

/// Sampled-grid verdict on Definition-1 robustness: is_robust holds iff
/// every sampled cell (at the stated resolution) lies inside the
/// epsilon-robustness set. A necessary-condition verdict only; the report
/// carries the resolution context through the map it was derived from.
struct RobustnessReport {
  double epsilon;
  double inside_fraction;
  bool is_robust;
  Eigen::VectorXd worst_theta;
  double worst_perr;
};

/// Indicator grid (1 = P_err <= epsilon) plus the report.
struct RobustnessSet {
  std::vector<std::uint8_t> inside;
  RobustnessReport report;
};

/// P_err = 1 - |<target|final>|^2, clamped to [0, 1] (|overlap|^2 may
/// exceed 1 by <= 1e-12 in floating point).
double error_probability(const QuantumState& final_state,
                         const QuantumState& target);

/// Propagates every grid cell of the box and records its error
/// probability. Cells are independent pure computations evaluated by up to
/// `threads` workers (0 = hardware concurrency) into a preallocated grid,
/// so the output is bitwise independent of scheduling. Failed cells become
/// NaN with an entry in the error list.
ErrorMap sweep(const StrategySpec& spec, const ParameterBox& box,
               std::array<int, 2> resolution, double T,
               const QuantumState& psi0, const QuantumState& psi1,
               int threads = 0);

/// Same grid, values from the closed forms; comparison overlays.
ErrorMap analytic_sweep(const StrategySpec& spec, const ParameterBox& box,
                        std::array<int, 2> resolution, double T);

/// R_epsilon membership of every cell plus the robustness verdict,
/// epsilon in [0, 1). NaN cells count as outside and force is_robust
/// false.
RobustnessSet robustness_set(const ErrorMap& map, double epsilon);

/// Grid argmax (first in lexicographic grid order on ties). Throws on NaN
/// cells or an empty map.
std::pair<Eigen::VectorXd, double> worst_case(const ErrorMap& map);

}  // namespace qsteer
