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

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace qsteer {

/// An argument violates a documented precondition.
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A control function produced a non-finite value. Carries the index of the
/// offending control and the (scaled) time at which it was evaluated.
class ControlEvaluationError : public std::runtime_error {
 public:
  ControlEvaluationError(std::size_t control_index, double time)
      : std::runtime_error("control " + std::to_string(control_index) +
                           " evaluated to a non-finite value at s = " +
                           std::to_string(time)),
        index_(control_index),
        time_(time) {}

  std::size_t control_index() const noexcept { return index_; }
  double time() const noexcept { return time_; }

 private:
  std::size_t index_;
  double time_;
};

/// The adiabatic frame is undefined at (delta, omega) = (0, 0).
class DegeneratePointError : public std::domain_error {
 public:
  DegeneratePointError()
      : std::domain_error("degenerate control point (delta, omega) = (0, 0)"),
        s_(std::numeric_limits<double>::quiet_NaN()) {}

  explicit DegeneratePointError(double s)
      : std::domain_error(
            "degenerate control point (delta, omega) = (0, 0) at s = " +
            std::to_string(s)),
        s_(s) {}

  /// Scaled time of the degeneracy; NaN when not tied to a grid.
  double location() const noexcept { return s_; }

 private:
  double s_;
};

/// A numerical guarantee (norm drift, unitarity) was violated.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qsteer
