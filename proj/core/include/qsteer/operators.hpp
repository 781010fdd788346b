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

#include "qsteer/state.hpp"

namespace qsteer {

/// Hermitian matrix in energy units (hbar = 1, entries are angular
/// frequencies). Construction stores (A + A^dag)/2, so the stored entries
/// satisfy entries(i,j) == conj(entries(j,i)) exactly; asymmetry beyond
/// 1e-8 is rejected as a genuine mistake rather than floating-point drift.
class HermitianOperator {
 public:
  explicit HermitianOperator(const Eigen::MatrixXcd& entries);

  static HermitianOperator zero(Eigen::Index dim);

  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
  Eigen::Index dim() const noexcept { return entries_.rows(); }

 private:
  Eigen::MatrixXcd entries_;
};

/// Unitary matrix; construction verifies ||U^dag U - I||_max <= 1e-10.
class UnitaryOperator {
 public:
  explicit UnitaryOperator(Eigen::MatrixXcd entries);

  static UnitaryOperator identity(Eigen::Index dim);

  UnitaryOperator adjoint() const;

  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
  Eigen::Index dim() const noexcept { return entries_.rows(); }

 private:
  struct Unchecked {};
  UnitaryOperator(Eigen::MatrixXcd entries, Unchecked) noexcept;

  Eigen::MatrixXcd entries_;
};

/// exp(-i H dt), the exact one-step propagator for a constant Hamiltonian.
/// n = 2 uses the closed-form Pauli rotation
///   exp(-i c0 dt) [cos(|c| dt) I - i sin(|c| dt) (c_hat . sigma)]
/// for H = c0 I + c . sigma; larger n goes through the Hermitian
/// eigendecomposition.
UnitaryOperator expm_step(const HermitianOperator& h, double dt);

/// U |psi>; dimensions must agree, norm is preserved within 1e-12.
QuantumState apply(const UnitaryOperator& u, const QuantumState& psi);

namespace detail {

/// Pauli coefficients of a 2x2 Hermitian matrix:
/// H = c0 I + cx sigma_x + cy sigma_y + cz sigma_z.
struct PauliCoeffs {
  double c0, cx, cy, cz;
};

PauliCoeffs pauli_coeffs(const Eigen::Matrix2cd& h);

/// Closed-form exp(-i (c0 I + c . sigma) dt); the 2x2 stepping kernel
/// shared by expm_step and the propagators (no wrapper validation).
Eigen::Matrix2cd pauli_step(double c0, double cx, double cy, double cz,
                            double dt);

/// exp(-i H dt) via SelfAdjointEigenSolver, any dimension.
Eigen::MatrixXcd expm_dense(const Eigen::MatrixXcd& h, double dt);

}  // namespace detail
}  // namespace qsteer
