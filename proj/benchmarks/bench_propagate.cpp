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
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND,  either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <qsteer/qsteer.hpp>

using namespace qsteer;

namespace {

Eigen::VectorXd theta2(double a, double b) {
  Eigen::VectorXd t(2);
  t << a, b;
  return t;
}

void BM_ExpmStep2x2(benchmark::State& state) {
  Eigen::Matrix2cd m;
  m << 0.7, std::complex<double>{0.3, -0.2},
      std::complex<double>{0.3, 0.2}, -0.7;
  const HermitianOperator h{Eigen::MatrixXcd(m)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(expm_step(h, 0.01));
  }
}
BENCHMARK(BM_ExpmStep2x2);

void BM_PropagateAllenEberly(benchmark::State& state) {
  StrategySpec spec;
  spec.kind = StrategyKind::allen_eberly;
  spec.delta0 = 1.0;
  spec.omega0 = 1.0;
  spec.grid = TimeGrid(-8.0, 8.0, static_cast<int>(state.range(0)));
  const Plant plant = make_plant(spec, 1.0);
  const QuantumState psi0 = QuantumState::basis(2, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        propagate_final(plant, theta2(1.0, 1.0), psi0, spec.grid, 1.0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PropagateAllenEberly)->Arg(1000)->Arg(4000)->Arg(16000);

void BM_SweepResonance(benchmark::State& state) {
  StrategySpec spec;
  spec.kind = StrategyKind::resonance;
  spec.omega0 = 1.0;
  spec.grid = TimeGrid(0.0, 1.0, 500);
  Eigen::VectorXd lo(2), hi(2);
  lo << 0.5, 0.8;
  hi << 3.0, 1.2;
  const ParameterBox box(lo, hi);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep(spec, box, {n, n}, 1.0,
                                   QuantumState::basis(2, 0),
                                   QuantumState::basis(2, 1),
                                   static_cast<int>(state.range(1))));
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_SweepResonance)
    ->Args({16, 1})
    ->Args({16, 4})
    ->Args({32, 4});

}  // namespace

BENCHMARK_MAIN();
