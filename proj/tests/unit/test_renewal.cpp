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

#include <cmath>

#include "renewal_kit/distribution.hpp"
#include "renewal_kit/error.hpp"
#include "renewal_kit/renewal.hpp"

namespace rk = renewal_kit;

namespace {

rk::Grid g01() { return rk::Grid::from_step(0.01, 30.0); }

TEST(RenewalFunction, PoissonIsLinear) {
  const rk::MixedMeasure e = rk::discretize(rk::exponential(1.0), g01());
  const rk::RenewalFunction a = rk::renewal_function(e, e, 10.0);
  for (double tau : {0.5, 1.0, 4.0, 9.5}) EXPECT_NEAR(a(tau), tau, 1e-5) << tau;
}

TEST(RenewalFunction, UniformAtOneIsEMinusOne) {
  const rk::MixedMeasure u = rk::discretize(rk::uniform(0.0, 1.0), g01());
  const rk::RenewalFunction a = rk::renewal_function(u, u, 2.0);
  EXPECT_NEAR(a(1.0), std::exp(1.0) - 1.0, 1e-4);
  EXPECT_NEAR(a(0.5), std::exp(0.5) - 1.0, 1e-4);
}

TEST(RenewalFunction, DeterministicIsFloor) {
  const rk::MixedMeasure d = rk::discretize(rk::dirac(1.0), g01());
  const rk::RenewalFunction a = rk::renewal_function(d, d, 6.5);
  EXPECT_EQ(a(0.99), 0.0);
  EXPECT_NEAR(a(1.0), 1.0, 1e-12);
  EXPECT_NEAR(a(3.7), 3.0, 1e-12);
  EXPECT_NEAR(a.A.left_limit(3.0), 2.0, 1e-12);
  EXPECT_LE(a.series_terms_used, 10u);
}

TEST(RenewalFunction, RejectsAtomAtZero) {
  const rk::Grid g = g01();
  const rk::MixedMeasure f0 = rk::discretize(rk::exponential(1.0), g);
  const rk::MixedMeasure p = rk::discretize(
      rk::mixture({0.5, 0.5}, {rk::dirac(0.0), rk::exponential(1.0)}), g);
  EXPECT_THROW(rk::renewal_function(f0, p, 5.0), rk::InvalidArgument);
}

TEST(RenewalFunction, LaplaceIdentityHolds) {
  const rk::Grid g = g01();
  const rk::MixedMeasure f0 = rk::discretize(rk::uniform(0.0, 2.0), g);
  const rk::MixedMeasure p = rk::discretize(rk::erlang(2, 1.0), g);
  const rk::RenewalFunction a = rk::renewal_function(f0, p, 25.0);
  for (double q : {0.5, 1.0, 2.0}) {
    EXPECT_LT(rk::laplace_identity_residual(f0, p, a, q), 1e-3) << q;
  }
}

TEST(RenewalFunction, BelowLordenBound) {
  const rk::MixedMeasure p = rk::discretize(rk::erlang(2, 1.0), g01());
  const rk::RenewalFunction a = rk::renewal_function(p, p, 15.0);
  for (std::size_t k = 0; k < a.grid.n; k += 7) {
    const double tau = a.grid.node(k);
    EXPECT_LE(a(tau), rk::lorden_bound(p, tau)) << tau;
  }
}

TEST(RenewalDensity, PoissonDensityIsOne) {
  const rk::Grid g = rk::Grid::from_step(0.01, 5.0);
  const auto alpha = rk::renewal_density(rk::exponential(1.0), rk::exponential(1.0), g);
  for (std::size_t k = 0; k < g.n; k += 50) EXPECT_NEAR(alpha[k], 1.0, 1e-3) << k;
}

TEST(RenewalDensity, UniformDensityIsExponentialBeforeOne) {
  const rk::Grid g = rk::Grid::from_step(0.01, 1.0);
  const auto alpha = rk::renewal_density(rk::uniform(0.0, 1.0), rk::uniform(0.0, 1.0), g);
  for (std::size_t k = 0; k < g.n; k += 20) {
    EXPECT_NEAR(alpha[k], std::exp(g.node(k)), 1e-3) << k;
  }
}

}  // namespace
