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

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "renewal_kit/kernels.hpp"

namespace kn = renewal_kit::kernels;

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& gen, double zero_frac) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(gen) < zero_frac ? 0.0 : u(gen);
  return v;
}

TEST(Kernels, ConvolveMatchesNaiveSum) {
  const std::vector<double> a = {1.0, 2.0, 3.0};
  const std::vector<double> w = {0.5, 0.25, 0.0, 1.0};
  std::vector<double> out(4, 0.0);
  kn::lattice_convolve(a, w, 1, out);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      const long idx = static_cast<long>(i + 1) - static_cast<long>(j);
      if (idx >= 0 && idx < static_cast<long>(w.size())) s += a[j] * w[idx];
    }
    EXPECT_DOUBLE_EQ(out[i], s) << i;
  }
}

TEST(Kernels, ParallelConvolveAgreesWithSerial) {
  std::mt19937_64 gen(1);
  for (std::size_t off : {0u, 3u, 50u}) {
    const auto a = random_vec(700, gen, 0.3);
    const auto w = random_vec(900, gen, 0.1);
    std::vector<double> p(800, 0.0), s(800, 0.0);
    kn::lattice_convolve(a, w, off, p);
    kn::lattice_convolve_serial(a, w, off, s);
    for (std::size_t i = 0; i < p.size(); ++i) {
      EXPECT_NEAR(p[i], s[i], 1e-12 * (1.0 + std::abs(s[i]))) << off << " " << i;
    }
  }
}

TEST(Kernels, SlicesBitIdenticalToSerial) {
  std::mt19937_64 gen(2);
  const std::size_t nx = 120, nt = 60;
  const auto u0 = random_vec(nx + nt, gen, 0.0);
  const auto p = random_vec(nx + nt, gen, 0.0);
  const auto alpha = random_vec(nt, gen, 0.0);
  std::vector<double> a(nx * nt), b(nx * nt);
  kn::strong_solution_slices(u0, p, alpha, nx, nt, 0.05, a);
  kn::strong_solution_slices_serial(u0, p, alpha, nx, nt, 0.05, b);
  EXPECT_EQ(a, b);
}

}  // namespace
