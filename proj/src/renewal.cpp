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

#include "renewal_kit/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "renewal_kit/error.hpp"
#include "renewal_kit/kernels.hpp"

namespace renewal_kit {
namespace {

bool is_empty(const MixedMeasure& m) {
  if (!m.atoms().empty()) return false;
  for (double v : m.cell_mass()) {
    if (v != 0.0) return false;
  }
  return true;
}

// F0 restricted to [0, tau_max] on the renewal grid.
MixedMeasure restrict_to(const MixedMeasure& f0, const Grid& g) {
  const double limit = g.x_max() + 1e-9 * g.h;
  std::vector<Atom> atoms;
  for (const Atom& a : f0.atoms()) {
    if (a.location <= limit) atoms.push_back({std::min(a.location, g.x_max()), a.mass});
  }
  std::vector<double> mass(g.n, 0.0);
  std::vector<double> centroid(g.n, 0.0);
  const std::size_t n = std::min(g.n, f0.grid().n);
  for (std::size_t k = 1; k < n; ++k) {
    mass[k] = f0.cell_mass()[k];
    centroid[k] = f0.cell_centroid()[k];
  }
  return MixedMeasure(g, std::move(atoms), std::move(mass),
                      std::move(centroid));
}

}  // namespace

RenewalFunction renewal_function(const MixedMeasure& f0, const MixedMeasure& p,
                                 double tau_max,
                                 const TruncationPolicy& policy) {
  if (!f0.grid().same_step(p.grid())) {
    throw InvalidArgument("F0 and P need a common grid step");
  }
  if (!(policy.tol > 0.0) || policy.i_max < 1) {
    throw InvalidArgument("truncation policy needs tol > 0 and i_max >= 1");
  }
  const double h = p.grid().h;
  if (p.atom_mass_near(0.0, 1e-9 * h) > 0.0) {
    throw InvalidArgument("holding-time law with an atom at 0 is not supported");
  }
  const double p_mass = total_mass(p);
  if (!(p_mass > 0.0)) throw InvalidArgument("holding-time law has no mass");
  const Grid g = Grid::from_step(h, tau_max);

  const double theta = policy.theta > 0.0 ? policy.theta : p_mass / p.mean();
  const double lp = laplace(p, theta);
  if (!(lp < 1.0)) throw InvalidArgument("holding-time law is degenerate");
  const double decay = -std::log(lp);
  const double log_scale = theta * g.x_max() - std::log1p(-lp);
  auto bound = [&](double terms) {
    return std::exp(log_scale - decay * (terms + 1.0));
  };
  const double need = (log_scale - std::log(policy.tol)) / decay;
  const std::size_t cutoff =
      need <= 0.0 ? 0 : static_cast<std::size_t>(std::floor(need));
  if (cutoff > policy.i_max) {
    const double residual = bound(static_cast<double>(policy.i_max));
    throw ConvergenceError("renewal series needs " + std::to_string(cutoff) +
                               " terms, above i_max",
                           residual);
  }

  MixedMeasure term = restrict_to(f0, g);
  std::vector<double> cells(g.n, 0.0);
  std::vector<Atom> atoms;
  auto accumulate = [&](const MixedMeasure& t) {
    const auto& m = t.cell_mass();
    for (std::size_t k = 1; k < g.n; ++k) cells[k] += m[k];
    atoms.insert(atoms.end(), t.atoms().begin(), t.atoms().end());
  };
  accumulate(term);
  const ShiftKernel kernel = make_shift_kernel(p, g.n);
  std::size_t used = 0;
  double residual = bound(static_cast<double>(cutoff));
  for (std::size_t i = 1; i <= cutoff; ++i) {
    term = convolve_with_kernel(term, p, kernel, g);
    used = i;
    if (is_empty(term)) {
      residual = 0.0;
      break;
    }
    accumulate(term);
  }

  std::vector<Atom> merged = merge_atoms(std::move(atoms), 0.5 * h);
  std::vector<Jump> jumps;
  std::vector<Atom> kept;
  for (const Atom& a : merged) {
    if (a.mass < 1e-12) {
      const std::int64_t k =
          std::max<std::int64_t>(1, cell_index(a.location, h));
      if (k < static_cast<std::int64_t>(g.n)) cells[static_cast<std::size_t>(k)] += a.mass;
      continue;
    }
    kept.push_back(a);
    jumps.push_back({a.location, a.mass});
  }
  std::vector<double> cont(g.n, 0.0);
  std::partial_sum(cells.begin(), cells.end(), cont.begin());
  NonDecreasingFn fn(g, std::move(cont), std::move(jumps));
  return RenewalFunction{g, std::move(kept), std::move(cells), std::move(fn),
                         used, residual};
}

double lorden_bound(const MixedMeasure& p, double tau) {
  const double mu = p.mean();
  if (!(mu > 0.0)) throw InvalidArgument("holding-time mean must be > 0");
  return tau / mu + p.second_moment() / (mu * mu) + 1.0;
}

double laplace_identity_residual(const MixedMeasure& f0, const MixedMeasure& p,
                                 const RenewalFunction& a, double q) {
  if (!(q > 0.0)) throw InvalidArgument("Laplace argument must be > 0");
  const Grid& g = a.grid;
  double lhs = 0.0;
  for (const Atom& j : a.jumps) lhs += j.mass * std::exp(-q * j.location);
  const double cell_factor = -std::expm1(-q * g.h) / (q * g.h);
  for (std::size_t k = 1; k < g.n; ++k) {
    if (a.cell_mass[k] != 0.0) {
      lhs += a.cell_mass[k] * std::exp(-q * g.node(k - 1)) * cell_factor;
    }
  }
  lhs += std::exp(-q * g.x_max()) / (q * p.mean());
  const double rhs = laplace(f0, q) / (1.0 - laplace(p, q));
  return std::abs(lhs - rhs);
}

std::vector<double> renewal_trace(const RenewalFunction& a,
                                  const SampledDensity& u0,
                                  const SampledDensity& p) {
  const Grid& g = a.grid;
  if (!g.same_step(u0.grid) || !g.same_step(p.grid)) {
    throw InvalidArgument("densities need the renewal grid step");
  }
  const std::size_t n = g.n;
  std::vector<double> alpha(n, 0.0);
  std::vector<double> kernel(n, 0.0);
  for (std::size_t e = 0; e < n; ++e) {
    const auto ei = static_cast<std::int64_t>(e);
    kernel[e] = 0.5 * (p.at(ei + 1) + p.at(ei));
  }
  std::vector<double> shifted_cells(n, 0.0);
  // alpha_k sums m_j kernel[k - j] over 1 <= j <= k.
  kernels::lattice_convolve(a.cell_mass, kernel, 0, shifted_cells);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = g.node(k);
    double v = u0.at(static_cast<std::int64_t>(k)) + shifted_cells[k];
    for (const Atom& j : a.jumps) {
      if (j.location > x + 1e-9 * g.h) break;
      v += j.mass * p(std::max(0.0, x - j.location));
    }
    alpha[k] = v;
  }
  return alpha;
}

std::vector<double> renewal_density(const SampledDensity& u0,
                                    const SampledDensity& p, const Grid& grid,
                                    const TruncationPolicy& policy) {
  const MixedMeasure f0 = MixedMeasure::from_density_samples(u0.grid, u0.values);
  const MixedMeasure pm = MixedMeasure::from_density_samples(p.grid, p.values);
  const RenewalFunction a = renewal_function(f0, pm, grid.x_max(), policy);
  return renewal_trace(a, u0, p);
}

std::vector<double> renewal_density(const DistributionSpec& u0,
                                    const DistributionSpec& p,
                                    const Grid& grid,
                                    const TruncationPolicy& policy) {
  const MixedMeasure f0 = discretize(u0, grid, false);
  const MixedMeasure pm = discretize(p, grid, false);
  const RenewalFunction a = renewal_function(f0, pm, grid.x_max(), policy);
  return renewal_trace(a, sample_density(u0, grid), sample_density(p, grid));
}

}  // namespace renewal_kit
