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

#include "qsteer/state.hpp"

#include <cmath>

namespace qsteer {

namespace {

constexpr double kNormTolerance = 1e-12;

void check_dimension_and_finiteness(const Eigen::VectorXcd& v) {
  if (v.size() < 2) {
    throw InvalidInputError("quantum state needs dimension >= 2, got " +
                            std::to_string(v.size()));
  }
  if (!v.allFinite()) {
    throw InvalidInputError("quantum state amplitudes must be finite");
  }
}

}  // namespace

QuantumState::QuantumState(Eigen::VectorXcd amplitudes)
    : amps_(std::move(amplitudes)) {
  check_dimension_and_finiteness(amps_);
  const double norm = amps_.norm();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw InvalidInputError(
        "quantum state norm is " + std::to_string(norm) +
        ", expected 1 within 1e-12 (use QuantumState::normalized)");
  }
}

QuantumState::QuantumState(Eigen::VectorXcd amplitudes, Unchecked) noexcept
    : amps_(std::move(amplitudes)) {}

QuantumState QuantumState::normalized(Eigen::VectorXcd amplitudes) {
  check_dimension_and_finiteness(amplitudes);
  const double norm = amplitudes.norm();
  if (norm <= 0.0) {
    throw InvalidInputError("cannot normalize a zero state vector");
  }
  amplitudes /= norm;
  return QuantumState(std::move(amplitudes), Unchecked{});
}

QuantumState QuantumState::basis(Eigen::Index dim, Eigen::Index index) {
  if (dim < 2) {
    throw InvalidInputError("quantum state needs dimension >= 2, got " +
                            std::to_string(dim));
  }
  if (index < 0 || index >= dim) {
    throw InvalidInputError("basis index " + std::to_string(index) +
                            " out of range for dimension " +
                            std::to_string(dim));
  }
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(dim);
  amps(index) = 1.0;
  return QuantumState(std::move(amps), Unchecked{});
}

std::complex<double> overlap(const QuantumState& a, const QuantumState& b) {
  if (a.dim() != b.dim()) {
    throw InvalidInputError("overlap dimension mismatch: " +
                            std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
  }
  return a.amplitudes().dot(b.amplitudes());
}

}  // namespace qsteer
