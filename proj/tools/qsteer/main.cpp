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

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  qsteer::cli::CliOverrides overrides;
  double smax_flag = -1.0;
  int steps_flag = -1;
  std::string output_flag;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON run configuration")
      ->required();
  cmd->add_option("--output", args.output_flag, "output file (CSV)");
  cmd->add_option("--threads", args.overrides.threads,
                  "sweep worker threads (0 = auto)");
  cmd->add_option("--steps", args.steps_flag, "time-grid step override");
  cmd->add_option("--smax", args.smax_flag,
                  "symmetric window override [-smax, smax]; 0 = auto "
                  "(Landau-Zener)");
}

void finalize(CommonArgs& args, const CLI::App* cmd) {
  if (cmd->count("--smax") > 0) args.overrides.smax = args.smax_flag;
  if (cmd->count("--steps") > 0) args.overrides.steps = args.steps_flag;
  if (cmd->count("--output") > 0) args.overrides.output = args.output_flag;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace qsteer::cli;

  CLI::App app{
      "qsteer: two-level open-loop control simulation, closed-form error "
      "probabilities and epsilon-robustness sweeps"};
  app.require_subcommand(1);

  CommonArgs simulate_args, sweep_args, compare_args;
  CLI::App* simulate =
      app.add_subcommand("simulate", "single run at the nominal parameters");
  add_common(simulate, simulate_args);
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "error-probability map and robustness verdict over a box");
  add_common(sweep_cmd, sweep_args);
  CLI::App* compare = app.add_subcommand(
      "compare", "numeric vs closed-form comparison (and the LZ decay fit)");
  add_common(compare, compare_args);

  double teps_epsilon = 0.0, teps_delta0 = 0.0, teps_omega0 = 0.0;
  CLI::App* teps = app.add_subcommand(
      "teps", "horizon bound T_eps for the Allen-Eberly strategy");
  teps->add_option("--epsilon", teps_epsilon, "error threshold in (0, 1)")
      ->required();
  teps->add_option("--delta0", teps_delta0, "detuning amplitude")->required();
  teps->add_option("--omega0", teps_omega0, "Rabi amplitude")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfig;
  }

  try {
    if (simulate->parsed()) {
      finalize(simulate_args, simulate);
      return cmd_simulate(load_config(simulate_args.config_path),
                          simulate_args.overrides, std::cout, std::cerr);
    }
    if (sweep_cmd->parsed()) {
      finalize(sweep_args, sweep_cmd);
      return cmd_sweep(load_config(sweep_args.config_path),
                       sweep_args.overrides, std::cout, std::cerr);
    }
    if (compare->parsed()) {
      finalize(compare_args, compare);
      return cmd_compare(load_config(compare_args.config_path),
                         compare_args.overrides, std::cout, std::cerr);
    }
    if (teps->parsed()) {
      return cmd_teps(teps_epsilon, teps_delta0, teps_omega0, std::cout,
                      std::cerr);
    }
  } catch (const ConfigError& e) {
    for (const auto& detail : e.details()) {
      std::cerr << "config error: " << detail << "\n";
    }
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  }
  return kConfig;
}
