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

#include <optional>
#include <string>
#include <vector>

#include <qsteer/qsteer.hpp>

namespace qsteer::cli {

/// A config either fully validates or the run aborts; details carry one
/// "field.path: problem" line per offence.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> details)
      : std::runtime_error(details.empty() ? "invalid configuration"
                                           : details.front()),
        details_(std::move(details)) {}

  const std::vector<std::string>& details() const noexcept {
    return details_;
  }

 private:
  std::vector<std::string> details_;
};

struct GridConfig {
  double s_start = 0.0;
  double s_end = 1.0;
  int steps = 4000;
};

struct CompareConfig {
  double t_min = 1.0;
  double t_max = 10.0;
  int t_points = 12;
};

/// Basis-state index or explicit amplitude list.
struct StateConfig {
  bool is_index = true;
  int index = 0;
  Eigen::VectorXcd amplitudes;

  QuantumState realize(Eigen::Index dim) const;
};

/// Parsed, validated run configuration. Fully deterministic: no seeds,
/// identical configs give identical bytes out.
struct RunConfig {
  StrategyKind kind = StrategyKind::resonance;
  double delta0 = 0.0;
  double omega0 = 0.0;
  double horizon = 1.0;
  std::string envelope = "const";
  std::string delta_envelope = "const";
  std::optional<GridConfig> grid;
  std::optional<ParameterBox> box;
  std::optional<std::array<int, 2>> resolution;
  std::optional<double> epsilon;
  StateConfig initial;  // defaults to |e1>
  StateConfig target;   // defaults to |e2>
  std::optional<std::string> output;
  CompareConfig compare;
};

/// Command-line overrides; flags win over config fields.
struct CliOverrides {
  int threads = 0;                   ///< 0 = hardware concurrency
  std::optional<int> steps;          ///< step-count override
  std::optional<double> smax;        ///< symmetric window; 0 = LZ auto
  std::optional<std::string> output;
};

/// Parses and validates a JSON config; throws ConfigError listing every
/// offending field path.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Strategy spec with grid defaults and overrides resolved. Throws
/// ConfigError on incompatible overrides (e.g. --smax on resonance).
StrategySpec build_spec(const RunConfig& config,
                        const CliOverrides& overrides);

}  // namespace qsteer::cli
