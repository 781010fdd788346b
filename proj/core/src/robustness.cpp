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

#include "qsteer/robustness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

namespace qsteer {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_map_inputs(const ParameterBox& box,
                      const std::array<int, 2>& resolution) {
  if (box.dim() != 2) {
    throw InvalidInputError("error maps are two-parameter; box has dim " +
                            std::to_string(box.dim()));
  }
  if (resolution[0] < 1 || resolution[1] < 1) {
    throw InvalidInputError("resolution must be >= 1 per axis");
  }
}

int resolve_thread_count(int threads, std::size_t cells) {
  if (threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw > 0 ? static_cast<int>(hw) : 1;
  }
  return static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(threads),
                            std::max<std::size_t>(cells, 1)));
}

}  // namespace

double ErrorMap::axis_value(int axis, int index) const {
  const double lo = box.lower()(axis);
  const double hi = box.upper()(axis);
  const int n = resolution[axis];
  if (n == 1) return 0.5 * (lo + hi);
  return lo + (hi - lo) * index / (n - 1);
}

Eigen::VectorXd ErrorMap::theta_at(int i1, int i2) const {
  Eigen::VectorXd theta(2);
  theta << axis_value(0, i1), axis_value(1, i2);
  return theta;
}

double ErrorMap::value_at(int i1, int i2) const {
  return values[static_cast<std::size_t>(i1) * resolution[1] + i2];
}

double error_probability(const QuantumState& final_state,
                         const QuantumState& target) {
  const std::complex<double> ov = overlap(target, final_state);
  const double p = 1.0 - std::norm(ov);
  // |overlap|^2 may exceed 1 by <= 1e-12 in floating point.
  return std::clamp(p, 0.0, 1.0);
}

ErrorMap sweep(const StrategySpec& spec, const ParameterBox& box,
               std::array<int, 2> resolution, double T,
               const QuantumState& psi0, const QuantumState& psi1,
               int threads) {
  check_map_inputs(box, resolution);
  spec.validate();
  if (psi0.dim() != 2 || psi1.dim() != 2) {
    throw InvalidInputError("built-in strategy sweeps are two-level");
  }

  const Plant plant = make_plant(spec, T);
  const std::size_t cells =
      static_cast<std::size_t>(resolution[0]) * resolution[1];
  ErrorMap map{box,  resolution, std::vector<double>(cells, kNaN),
               T,    to_string(spec.kind),
               {}};

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  auto worker = [&]() {
    for (std::size_t cell = next.fetch_add(1); cell < cells;
         cell = next.fetch_add(1)) {
      const int i1 = static_cast<int>(cell) / resolution[1];
      const int i2 = static_cast<int>(cell) % resolution[1];
      try {
        const QuantumState final_state = propagate_final(
            plant, map.theta_at(i1, i2), psi0, spec.grid, T);
        map.values[cell] = error_probability(final_state, psi1);
      } catch (const std::exception& e) {
        map.values[cell] = kNaN;
        const std::lock_guard<std::mutex> lock(error_mutex);
        map.errors.push_back(SweepCellError{cell, e.what()});
      }
    }
  };

  const int nthreads = resolve_thread_count(threads, cells);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Arrival order depends on scheduling; the report must not.
  std::sort(map.errors.begin(), map.errors.end(),
            [](const SweepCellError& a, const SweepCellError& b) {
              return a.cell < b.cell;
            });
  return map;
}

ErrorMap analytic_sweep(const StrategySpec& spec, const ParameterBox& box,
                        std::array<int, 2> resolution, double T) {
  check_map_inputs(box, resolution);
  spec.validate();
  if (spec.kind == StrategyKind::custom) {
    throw InvalidInputError(
        "analytic_sweep supports only the built-in closed-form strategies");
  }
  const std::size_t cells =
      static_cast<std::size_t>(resolution[0]) * resolution[1];
  ErrorMap map{box,  resolution, std::vector<double>(cells, kNaN),
               T,    to_string(spec.kind) + ":analytic",
               {}};
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const int i1 = static_cast<int>(cell) / resolution[1];
    const int i2 = static_cast<int>(cell) % resolution[1];
    map.values[cell] = analytic_perr(spec, map.theta_at(i1, i2), T);
  }
  return map;
}

RobustnessSet robustness_set(const ErrorMap& map, double epsilon) {
  if (!(epsilon >= 0.0) || !(epsilon < 1.0)) {
    throw InvalidInputError("epsilon must lie in [0, 1)");
  }
  if (map.values.empty()) {
    throw InvalidInputError("robustness_set needs a non-empty map");
  }

  RobustnessSet result;
  result.inside.assign(map.values.size(), 0);
  std::size_t inside_count = 0;
  double worst = -1.0;
  std::size_t worst_cell = 0;
  bool any_nan = false;
  for (std::size_t cell = 0; cell < map.values.size(); ++cell) {
    const double v = map.values[cell];
    if (std::isnan(v)) {
      any_nan = true;
      continue;
    }
    if (v <= epsilon) {
      result.inside[cell] = 1;
      ++inside_count;
    }
    if (v > worst) {  // strict: first cell wins ties in grid order
      worst = v;
      worst_cell = cell;
    }
  }

  const int i1 = static_cast<int>(worst_cell) / map.resolution[1];
  const int i2 = static_cast<int>(worst_cell) % map.resolution[1];
  result.report.epsilon = epsilon;
  result.report.inside_fraction =
      static_cast<double>(inside_count) / static_cast<double>(map.values.size());
  result.report.is_robust =
      !any_nan && inside_count == map.values.size();
  result.report.worst_theta = map.theta_at(i1, i2);
  result.report.worst_perr = worst >= 0.0 ? worst : kNaN;
  return result;
}

std::pair<Eigen::VectorXd, double> worst_case(const ErrorMap& map) {
  if (map.values.empty()) {
    throw InvalidInputError("worst_case needs a non-empty map");
  }
  double worst = -1.0;
  std::size_t worst_cell = 0;
  for (std::size_t cell = 0; cell < map.values.size(); ++cell) {
    const double v = map.values[cell];
    if (std::isnan(v)) {
      throw InvalidInputError("worst_case is undefined on maps with failed "
                              "(NaN) cells; cell " +
                              std::to_string(cell) + " failed");
    }
    if (v > worst) {
      worst = v;
      worst_cell = cell;
    }
  }
  const int i1 = static_cast<int>(worst_cell) / map.resolution[1];
  const int i2 = static_cast<int>(worst_cell) % map.resolution[1];
  return {map.theta_at(i1, i2), worst};
}

}  // namespace qsteer
