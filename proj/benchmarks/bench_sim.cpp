// Copyright 2026 The qetulab developers
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

#include <benchmark/benchmark.h>

#include "qetulab/qetu.hpp"
#include "qetulab/trotter.hpp"

using namespace qetulab;

static void BM_StateVectorTrotterStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto ham = pauli::build_tfim(n, 4.0);
  const auto plan = trotter::trotter_evolution(ham, 1.0, 1, 1);
  sim::StateVector sv(n);
  for (auto _ : state) {
    sv.run(plan.circuit);
    benchmark::DoNotOptimize(sv.amplitudes().data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_StateVectorTrotterStep)->DenseRange(4, 10, 2)->Complexity();

static void BM_DensityMatrixNoisyGate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  sim::DensityMatrix dm(n);
  dm.set_noise({1e-3});
  const auto gate = sim::hadamard(1);
  for (auto _ : state) {
    dm.apply(gate);
    benchmark::DoNotOptimize(dm.rho().data());
  }
}
BENCHMARK(BM_DensityMatrixNoisyGate)->DenseRange(3, 9, 2)->Unit(benchmark::kMicrosecond);

static void BM_ControlFreeQetuBuildRun(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto ham = pauli::build_tfim(n, 4.0);
  const auto spec = spectral::exact_diagonalize(ham);
  const auto shift = spectral::affine_shift(spec, 0.1);
  const auto ss = cheb::shifted_sign_spec(shift.mu, shift.delta, 0.1, 0.999);
  const auto approx = cheb::solve_minmax(cheb::make_shifted_sign_approx(ss, 14));
  const auto pf = qsp::solve_phases(qsp::make_qsp_target(approx));
  for (auto _ : state) {
    auto qc = qetu::build_qetu_trotter(ham, shift.c1, shift.c2, pf,
                                       qetu::Mode::ControlFree, 1, 3);
    sim::StateVector sv(n + 1);
    sv.run(qc.circuit);
    benchmark::DoNotOptimize(sv.amplitudes().data());
  }
}
BENCHMARK(BM_ControlFreeQetuBuildRun)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
