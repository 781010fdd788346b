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

#include "qsteer/plant.hpp"

#include <cmath>

namespace qsteer {

ParameterBox::ParameterBox(Eigen::VectorXd lower, Eigen::VectorXd upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size() || lower_.size() == 0) {
    throw InvalidInputError("parameter box bounds must share a nonzero size");
  }
  if (!lower_.allFinite() || !upper_.allFinite()) {
    throw InvalidInputError("parameter box bounds must be finite");
  }
  for (Eigen::Index k = 0; k < lower_.size(); ++k) {
    if (!(lower_(k) < upper_(k))) {
      throw InvalidInputError("parameter box axis " + std::to_string(k) +
                              " needs lower < upper");
    }
  }
}

bool ParameterBox::contains(const Eigen::VectorXd& theta) const {
  if (theta.size() != dim()) return false;
  return (theta.array() >= lower_.array()).all() &&
         (theta.array() <= upper_.array()).all();
}

Plant::Plant(HermitianOperator drift,
             std::vector<HermitianOperator> control_ops,
             std::vector<ControlFunction> controls)
    : Plant(std::move(drift), std::move(control_ops), std::move(controls),
            DriftOffset{}) {}

Plant::Plant(HermitianOperator drift,
             std::vector<HermitianOperator> control_ops,
             std::vector<ControlFunction> controls, DriftOffset drift_offset)
    : drift_(std::move(drift)),
      control_ops_(std::move(control_ops)),
      controls_(std::move(controls)),
      drift_offset_(std::move(drift_offset)) {
  if (control_ops_.size() != controls_.size()) {
    throw InvalidInputError(
        "plant needs one control function per control operator (" +
        std::to_string(control_ops_.size()) + " operators, " +
        std::to_string(controls_.size()) + " functions)");
  }
  for (const auto& op : control_ops_) {
    if (op.dim() != drift_.dim()) {
      throw InvalidInputError("all plant operators must share dimension " +
                              std::to_string(drift_.dim()));
    }
  }
  for (std::size_t j = 0; j < controls_.size(); ++j) {
    if (!controls_[j].evaluate) {
      throw InvalidInputError("control function " + std::to_string(j) +
                              " is empty");
    }
  }
}

Eigen::MatrixXcd Plant::drift_at(double t) const {
  if (!drift_offset_) return drift_.entries();
  return drift_.entries() + drift_offset_(t);
}

Eigen::VectorXd Plant::control_values(const Eigen::VectorXd& theta,
                                      double t) const {
  Eigen::VectorXd values(static_cast<Eigen::Index>(controls_.size()));
  for (std::size_t j = 0; j < controls_.size(); ++j) {
    const double u = controls_[j].evaluate(theta, t);
    if (!std::isfinite(u)) {
      throw ControlEvaluationError(j, t);
    }
    values(static_cast<Eigen::Index>(j)) = u;
  }
  return values;
}

HermitianOperator hamiltonian_at(const Plant& plant,
                                 const Eigen::VectorXd& theta, double t) {
  const Eigen::VectorXd u = plant.control_values(theta, t);
  Eigen::MatrixXcd h = plant.drift_at(t);
  for (std::size_t j = 0; j < plant.control_count(); ++j) {
    h += u(static_cast<Eigen::Index>(j)) *
         plant.control_ops()[j].entries();
  }
  return HermitianOperator(h);
}

HermitianOperator transfer_uncertainty(const Plant& plant,
                                       const Eigen::VectorXd& theta,
                                       const Eigen::VectorXd& theta_star,
                                       double t) {
  if (theta.size() != theta_star.size()) {
    throw InvalidInputError("theta and theta_star must share length");
  }
  const Eigen::VectorXd u = plant.control_values(theta, t);
  const Eigen::VectorXd u_star = plant.control_values(theta_star, t);
  Eigen::MatrixXcd delta_h =
      Eigen::MatrixXcd::Zero(plant.dim(), plant.dim());
  for (std::size_t j = 0; j < plant.control_count(); ++j) {
    const auto idx = static_cast<Eigen::Index>(j);
    delta_h += (u(idx) - u_star(idx)) * plant.control_ops()[j].entries();
  }
  return HermitianOperator(delta_h);
}

Plant perturbed_plant(const Plant& plant, const Eigen::VectorXd& theta,
                      const Eigen::VectorXd& theta_star) {
  if (theta.size() != theta_star.size()) {
    throw InvalidInputError("theta and theta_star must share length");
  }
  if (plant.drift_offset()) {
    throw InvalidInputError(
        "perturbed_plant expects a plant without a drift offset");
  }

  // Freeze every control at theta_star; the deviation moves into a
  // time-varying drift term Sum_j H_j (u_j(theta, t) - u_j(theta_star, t)).
  std::vector<ControlFunction> frozen;
  frozen.reserve(plant.control_count());
  for (const auto& control : plant.controls()) {
    auto fn = control.evaluate;
    Eigen::VectorXd pinned = theta_star;
    frozen.push_back(ControlFunction{
        [fn, pinned](const Eigen::VectorXd&, double t) {
          return fn(pinned, t);
        },
        control.name + "@nominal"});
  }

  Plant source = plant;
  Eigen::VectorXd theta_copy = theta;
  Eigen::VectorXd theta_star_copy = theta_star;
  Plant::DriftOffset offset = [source, theta_copy,
                               theta_star_copy](double t) -> Eigen::MatrixXcd {
    return transfer_uncertainty(source, theta_copy, theta_star_copy, t)
        .entries();
  };

  return Plant(plant.drift(), plant.control_ops(), std::move(frozen),
               std::move(offset));
}

}  // namespace qsteer
