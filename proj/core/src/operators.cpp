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

#include "qsteer/operators.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace qsteer {

namespace {

constexpr double kHermiticityTolerance = 1e-8;
constexpr double kUnitarityTolerance = 1e-10;

using Complex = std::complex<double>;
const Complex kI{0.0, 1.0};

}  // namespace

HermitianOperator::HermitianOperator(const Eigen::MatrixXcd& entries) {
  if (entries.rows() != entries.cols() || entries.rows() < 1) {
    throw InvalidInputError("Hermitian operator must be a square matrix");
  }
  if (!entries.allFinite()) {
    throw InvalidInputError("Hermitian operator entries must be finite");
  }
  const double asymmetry =
      (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (asymmetry > kHermiticityTolerance) {
    throw InvalidInputError("matrix asymmetry " + std::to_string(asymmetry) +
                            " exceeds 1e-8; not Hermitian");
  }
  // Symmetrize: tolerates floating-point drift below the threshold and
  // makes entries(i,j) == conj(entries(j,i)) hold exactly as stored.
  entries_ = 0.5 * (entries + entries.adjoint().eval());
}

HermitianOperator HermitianOperator::zero(Eigen::Index dim) {
  return HermitianOperator(Eigen::MatrixXcd::Zero(dim, dim));
}

UnitaryOperator::UnitaryOperator(Eigen::MatrixXcd entries)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw InvalidInputError("unitary operator must be a square matrix");
  }
  if (!entries_.allFinite()) {
    throw InvalidInputError("unitary operator entries must be finite");
  }
  const double defect =
      (entries_.adjoint() * entries_ -
       Eigen::MatrixXcd::Identity(entries_.rows(), entries_.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (defect > kUnitarityTolerance) {
    throw InvalidInputError("unitarity defect " + std::to_string(defect) +
                            " exceeds 1e-10");
  }
}

UnitaryOperator::UnitaryOperator(Eigen::MatrixXcd entries, Unchecked) noexcept
    : entries_(std::move(entries)) {}

UnitaryOperator UnitaryOperator::identity(Eigen::Index dim) {
  return UnitaryOperator(Eigen::MatrixXcd::Identity(dim, dim), Unchecked{});
}

UnitaryOperator UnitaryOperator::adjoint() const {
  return UnitaryOperator(entries_.adjoint(), Unchecked{});
}

namespace detail {

PauliCoeffs pauli_coeffs(const Eigen::Matrix2cd& h) {
  const double a = h(0, 0).real();
  const double b = h(1, 1).real();
  const Complex c = h(0, 1);
  // H = c0 I + cx sx + cy sy + cz sz with H(0,1) = cx - i cy.
  return PauliCoeffs{0.5 * (a + b), c.real(), -c.imag(), 0.5 * (a - b)};
}

Eigen::Matrix2cd pauli_step(double c0, double cx, double cy, double cz,
                            double dt) {
  const double r = std::sqrt(cx * cx + cy * cy + cz * cz);
  const Complex phase = std::exp(-kI * c0 * dt);
  const double cosr = std::cos(r * dt);
  // sin(r dt)/r, continuous through r = 0.
  const double snc = r > 0.0 ? std::sin(r * dt) / r : dt;
  Eigen::Matrix2cd u;
  u(0, 0) = phase * (cosr - kI * cz * snc);
  u(0, 1) = phase * ((-kI * cx - cy) * snc);
  u(1, 0) = phase * ((-kI * cx + cy) * snc);
  u(1, 1) = phase * (cosr + kI * cz * snc);
  return u;
}

Eigen::MatrixXcd expm_dense(const Eigen::MatrixXcd& h, double dt) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericError("Hermitian eigendecomposition failed");
  }
  const Eigen::VectorXcd phases =
      (-kI * dt * solver.eigenvalues().array()).exp();
  return solver.eigenvectors() * phases.asDiagonal() *
         solver.eigenvectors().adjoint();
}

}  // namespace detail

UnitaryOperator expm_step(const HermitianOperator& h, double dt) {
  if (!std::isfinite(dt)) {
    throw InvalidInputError("expm_step duration must be finite");
  }
  if (h.dim() == 2) {
    const detail::PauliCoeffs c = detail::pauli_coeffs(h.entries());
    return UnitaryOperator(detail::pauli_step(c.c0, c.cx, c.cy, c.cz, dt));
  }
  return UnitaryOperator(detail::expm_dense(h.entries(), dt));
}

QuantumState apply(const UnitaryOperator& u, const QuantumState& psi) {
  if (u.dim() != psi.dim()) {
    throw InvalidInputError("apply dimension mismatch: operator " +
                            std::to_string(u.dim()) + ", state " +
                            std::to_string(psi.dim()));
  }
  return QuantumState(u.entries() * psi.amplitudes());
}

}  // namespace qsteer
