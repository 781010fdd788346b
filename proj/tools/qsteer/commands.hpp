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

#include <iosfwd>

#include "config.hpp"

namespace qsteer::cli {

/// Stable exit-code contract for CI scripts.
enum ExitCode : int {
  kOk = 0,
  kNotRobust = 1,  // also: any NaN sweep cell
  kConfig = 2,
  kNumeric = 3,
};

/// Single-point run at the nominal theta*: prints final-state amplitudes,
/// P_err and (away from degenerate frame points) the adiabatic-frame
/// populations as a JSON summary.
int cmd_simulate(const RunConfig& config, const CliOverrides& overrides,
                 std::ostream& out, std::ostream& err);

/// Grid sweep over the box: writes the error-map CSV and prints the
/// robustness report; exit 0 iff epsilon-robust at the sampled resolution.
int cmd_sweep(const RunConfig& config, const CliOverrides& overrides,
              std::ostream& out, std::ostream& err);

/// Numeric-vs-analytic comparison CSV plus, for Landau-Zener, a log-linear
/// fit of numeric log P_err against T (frame-endpoint readout) reported
/// next to the printed formula's slope.
int cmd_compare(const RunConfig& config, const CliOverrides& overrides,
                std::ostream& out, std::ostream& err);

/// Thin wrapper over ae_t_epsilon.
int cmd_teps(double epsilon, double delta0, double omega0, std::ostream& out,
             std::ostream& err);

}  // namespace qsteer::cli
