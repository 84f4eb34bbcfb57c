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

#ifndef RENEWAL_KIT_TRANSPORT_HPP_
#define RENEWAL_KIT_TRANSPORT_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "renewal_kit/distribution.hpp"
#include "renewal_kit/measure.hpp"
#include "renewal_kit/renewal.hpp"

namespace renewal_kit {

// u(x_j, tau_k) on a space-time lattice with dtau = dx = h, stored slice by
// slice, and the boundary trace u(0, tau_k) = alpha(tau_k).
struct DensityField {
  Grid x_grid;
  Grid tau_grid;
  std::vector<double> values;
  std::vector<double> trace;

  double at(std::size_t j, std::size_t k) const {
    return values[k * x_grid.n + j];
  }
  std::span<const double> slice(std::size_t k) const {
    return {values.data() + k * x_grid.n, x_grid.n};
  }
};

double slice_mass(const DensityField& u, std::size_t k);
MixedMeasure slice_measure(const DensityField& u, std::size_t k);

// u(x, tau) = u0(x + tau) + int_0^tau p(x + tau - s) alpha(s) ds by the
// trapezoid rule. u0 and p must cover [0, x_max + tau_max]; alpha holds at
// least tau_grid.n values.
DensityField strong_solution(const SampledDensity& u0, const SampledDensity& p,
                             std::span<const double> alpha, const Grid& grid,
                             const Grid& tau_grid);
// Samples the laws and computes alpha with the renewal series.
DensityField strong_solution(const DistributionSpec& u0,
                             const DistributionSpec& p, const Grid& grid,
                             const Grid& tau_grid,
                             const TruncationPolicy& policy = {});

// Residual-time law at physical time tau for measure data. When A jumps at
// tau, theta is the fraction of the jump already renewed: theta = 0 leaves
// it parked at the origin, theta = 1 gives the cadlag value. theta != 0 at a
// tau where A does not jump is rejected.
MixedMeasure measure_solution_at_tau(const MixedMeasure& f0,
                                     const MixedMeasure& p,
                                     const RenewalFunction& a, double tau,
                                     double theta = 0.0);

// Max over the lattice of |u_tau - u_x - p(x) u(0, tau)|, centered
// differences inside and one-sided ones on the edges.
double pde_residual(const DensityField& u, const SampledDensity& p);

}  // namespace renewal_kit

#endif  // RENEWAL_KIT_TRANSPORT_HPP_
