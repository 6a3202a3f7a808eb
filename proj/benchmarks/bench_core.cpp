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

#include "qetulab/cheb.hpp"
#include "qetulab/qsp.hpp"
#include "qetulab/spectral.hpp"

using namespace qetulab;

static void BM_HermitianEig(benchmark::State& state) {
  const std::size_t n = state.range(0);
  Rng rng(7);
  CMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = rng.normal();
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = cplx(rng.normal(), rng.normal());
      h(j, i) = std::conj(h(i, j));
    }
  }
  for (auto _ : state) {
    auto eig = hermitian_eig(h);
    benchmark::DoNotOptimize(eig.values.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HermitianEig)->RangeMultiplier(2)->Range(32, 256)->Complexity();

static void BM_MinmaxLP(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto ss = cheb::shifted_sign_spec(1.0, 0.4, 0.1, 0.999);
  for (auto _ : state) {
    auto r = cheb::solve_minmax(cheb::make_shifted_sign_approx(ss, d));
    benchmark::DoNotOptimize(r.eps_star);
  }
}
BENCHMARK(BM_MinmaxLP)->Arg(20)->Arg(80)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_ErfStepPoly(benchmark::State& state) {
  const double halfwidth = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto sp = cheb::erf_step_poly(0.45, halfwidth, 0.999, 1e-3);
    benchmark::DoNotOptimize(sp.coeffs.data());
  }
}
BENCHMARK(BM_ErfStepPoly)->Arg(100)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

static void BM_QspCostGrad(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto ss = cheb::shifted_sign_spec(1.0, 0.4, 0.1, 0.999);
  const auto approx = cheb::solve_minmax(cheb::make_shifted_sign_approx(ss, d));
  const auto target = qsp::make_qsp_target(approx);
  std::vector<double> phis(d + 1, M_PI / 2);
  for (auto _ : state) {
    auto cg = qsp::qsp_cost(phis, target);
    benchmark::DoNotOptimize(cg.cost);
  }
}
BENCHMARK(BM_QspCostGrad)->Arg(40)->Arg(100)->Arg(200)->Unit(benchmark::kMicrosecond);

static void BM_PhaseSolve(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto ss = cheb::shifted_sign_spec(1.0, 0.4, 0.1, 0.999);
  const auto approx = cheb::solve_minmax(cheb::make_shifted_sign_approx(ss, d));
  const auto target = qsp::make_qsp_target(approx);
  for (auto _ : state) {
    auto pf = qsp::solve_phases(target);
    benchmark::DoNotOptimize(pf.residual);
  }
}
BENCHMARK(BM_PhaseSolve)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
