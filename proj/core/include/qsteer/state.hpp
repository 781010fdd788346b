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
#include <complex>

#include "qsteer/errors.hpp"

namespace qsteer {

/// Unit-norm state vector in C^n, n >= 2. Immutable after construction.
class QuantumState {
 public:
  /// Norm must already be 1 within 1e-12; use normalized() to rescale
  /// arbitrary vectors.
  explicit QuantumState(Eigen::VectorXcd amplitudes);

  /// Rescales a nonzero finite vector to unit norm.
  static QuantumState normalized(Eigen::VectorXcd amplitudes);

  /// Canonical basis vector e_index in dimension dim.
  static QuantumState basis(Eigen::Index dim, Eigen::Index index);

  const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
  Eigen::Index dim() const noexcept { return amps_.size(); }

 private:
  struct Unchecked {};
  QuantumState(Eigen::VectorXcd amplitudes, Unchecked) noexcept;

  Eigen::VectorXcd amps_;
};

/// Inner product <a|b> = sum_i conj(a_i) b_i.
std::complex<double> overlap(const QuantumState& a, const QuantumState& b);

}  // namespace qsteer
