// Copyright 2026 The renewal-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "renewal_kit/distribution.hpp"
#include "renewal_kit/kernels.hpp"
#include "renewal_kit/renewal.hpp"

namespace rk = renewal_kit;
namespace kn = renewal_kit::kernels;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(gen);
  return v;
}

template <auto Kernel>
void BM_LatticeConvolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_vec(n, 1);
  const auto w = random_vec(n, 2);
  std::vector<double> out(n);
  for (auto _ : state) {
    std::fill(out.begin(), out.end(), 0.0);
    Kernel(a, w, 0, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}

template <auto Kernel>
void BM_StrongSolution(benchmark::State& state) {
  const auto nx = static_cast<std::size_t>(state.range(0));
  const std::size_t nt = nx / 4;
  const auto u0 = random_vec(nx + nt, 3);
  const auto p = random_vec(nx + nt, 4);
  const auto alpha = random_vec(nt, 5);
  std::vector<double> out(nx * nt);
  for (auto _ : state) {
    Kernel(u0, p, alpha, nx, nt, 0.01, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_RenewalFunctionGolden(benchmark::State& state) {
  const rk::Grid g = rk::Grid::from_step(0.01, 40.0);
  const rk::MixedMeasure f0 = rk::discretize(rk::dirac(1.0), g);
  const rk::MixedMeasure p = rk::discretize(rk::exponential(1.0), g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rk::renewal_function(f0, p, static_cast<double>(state.range(0))));
  }
}

BENCHMARK(BM_LatticeConvolve<kn::lattice_convolve_serial>)->RangeMultiplier(4)->Range(256, 16384);
BENCHMARK(BM_LatticeConvolve<kn::lattice_convolve>)->RangeMultiplier(4)->Range(256, 16384);
BENCHMARK(BM_StrongSolution<kn::strong_solution_slices_serial>)->Arg(1000)->Arg(4000);
BENCHMARK(BM_StrongSolution<kn::strong_solution_slices>)->Arg(1000)->Arg(4000);
BENCHMARK(BM_RenewalFunctionGolden)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
