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

#include <Eigen/Core>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qsteer/operators.hpp"

namespace qsteer {

/// Scalar control signal u(theta, t). Must be deterministic and finite on
/// the declared parameter box and horizon.
struct ControlFunction {
  std::function<double(const Eigen::VectorXd& theta, double t)> evaluate;
  std::string name;
};

/// Closed axis-aligned box in parameter space; lower(k) < upper(k).
/// Approximates the open parameter set: sweeps sample the closed box
/// including the boundary, since finite grids need endpoints.
class ParameterBox {
 public:
  ParameterBox(Eigen::VectorXd lower, Eigen::VectorXd upper);

  const Eigen::VectorXd& lower() const noexcept { return lower_; }
  const Eigen::VectorXd& upper() const noexcept { return upper_; }
  Eigen::Index dim() const noexcept { return lower_.size(); }

  bool contains(const Eigen::VectorXd& theta) const;

 private:
  Eigen::VectorXd lower_, upper_;
};

/// Bilinear control model H(t) = H0 + sum_j u_j(theta, t) H_j.
///
/// A plant may additionally carry a time-varying drift offset; this is how
/// perturbed_plant() moves parameter uncertainty into the internal
/// Hamiltonian while freezing the controls at the nominal value.
class Plant {
 public:
  using DriftOffset = std::function<Eigen::MatrixXcd(double t)>;

  Plant(HermitianOperator drift, std::vector<HermitianOperator> control_ops,
        std::vector<ControlFunction> controls);

  Plant(HermitianOperator drift, std::vector<HermitianOperator> control_ops,
        std::vector<ControlFunction> controls, DriftOffset drift_offset);

  const HermitianOperator& drift() const noexcept { return drift_; }
  const std::vector<HermitianOperator>& control_ops() const noexcept {
    return control_ops_;
  }
  const std::vector<ControlFunction>& controls() const noexcept {
    return controls_;
  }
  const DriftOffset& drift_offset() const noexcept { return drift_offset_; }

  Eigen::Index dim() const noexcept { return drift_.dim(); }
  std::size_t control_count() const noexcept { return controls_.size(); }

  /// H0 plus the drift offset (if any) as a raw matrix.
  Eigen::MatrixXcd drift_at(double t) const;

  /// All control values at (theta, t); throws ControlEvaluationError with
  /// the offending index on a non-finite value.
  Eigen::VectorXd control_values(const Eigen::VectorXd& theta, double t) const;

 private:
  HermitianOperator drift_;
  std::vector<HermitianOperator> control_ops_;
  std::vector<ControlFunction> controls_;
  DriftOffset drift_offset_;  // empty for plain plants
};

/// H(t) = H0 + sum_j u_j(theta, t) H_j, Hermitian by construction.
HermitianOperator hamiltonian_at(const Plant& plant,
                                 const Eigen::VectorXd& theta, double t);

/// Uncertainty transferred to the internal Hamiltonian:
/// sum_j H_j (u_j(theta, t) - u_j(theta_star, t)).
HermitianOperator transfer_uncertainty(const Plant& plant,
                                       const Eigen::VectorXd& theta,
                                       const Eigen::VectorXd& theta_star,
                                       double t);

/// The plant (H0 + DeltaH_u(theta, .), H_1, ..., H_m) with controls frozen
/// at theta_star: propagating it (at any parameter value) reproduces the
/// original plant at theta. The offset is a time-varying drift callback
/// because the control deviation generally depends on t through the
/// envelope.
Plant perturbed_plant(const Plant& plant, const Eigen::VectorXd& theta,
                      const Eigen::VectorXd& theta_star);

}  // namespace qsteer
