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

#ifndef RENEWAL_KIT_RENEWAL_HPP_
#define RENEWAL_KIT_RENEWAL_HPP_

#include <cstddef>
#include <vector>

#include "renewal_kit/distribution.hpp"
#include "renewal_kit/measure.hpp"

namespace renewal_kit {

// Cutoff for the series sum_i F0 * P^{*i}. The number of terms is the
// smallest I with e^{theta tau_max} L(theta)^{I+1} / (1 - L(theta)) < tol,
// L being the Laplace transform of P. theta <= 0 selects 1/mean(P).
struct TruncationPolicy {
  double tol = 1e-9;
  double theta = 0.0;
  std::size_t i_max = 100000;
};

// Expected number of renewals A(tau) = E #{i >= 0 : X_0 + ... + X_i <= tau}
// on [0, tau_max], together with the measure dA it integrates.
struct RenewalFunction {
  Grid grid;
  std::vector<Atom> jumps;
  // dA restricted to cell (x_{k-1}, x_k], spread uniformly over the cell.
  std::vector<double> cell_mass;
  NonDecreasingFn A;
  std::size_t series_terms_used = 0;
  double truncation_residual = 0.0;

  double tau_max() const { return grid.x_max(); }
  double operator()(double tau) const { return A(tau); }
};

// Throws InvalidArgument when P has an atom at 0, ConvergenceError when the
// cutoff exceeds policy.i_max.
RenewalFunction renewal_function(const MixedMeasure& f0, const MixedMeasure& p,
                                 double tau_max,
                                 const TruncationPolicy& policy = {});

// tau / E[P] + E[P^2] / E[P]^2 + 1.
double lorden_bound(const MixedMeasure& p, double tau);

// |int e^{-q s} dA(s) - L(F0)(q) / (1 - L(P)(q))| with the integral beyond
// tau_max estimated from the asymptotic renewal rate 1/E[P].
double laplace_identity_residual(const MixedMeasure& f0, const MixedMeasure& p,
                                 const RenewalFunction& a, double q);

// Renewal density at the nodes of a.grid:
//   alpha(x_k) = u0(x_k) + int_{[0, x_k]} p(x_k - s) dA(s).
std::vector<double> renewal_trace(const RenewalFunction& a,
                                  const SampledDensity& u0,
                                  const SampledDensity& p);

std::vector<double> renewal_density(const SampledDensity& u0,
                                    const SampledDensity& p, const Grid& grid,
                                    const TruncationPolicy& policy = {});
std::vector<double> renewal_density(const DistributionSpec& u0,
                                    const DistributionSpec& p,
                                    const Grid& grid,
                                    const TruncationPolicy& policy = {});

}  // namespace renewal_kit

#endif  // RENEWAL_KIT_RENEWAL_HPP_
