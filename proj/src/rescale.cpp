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

#include "renewal_kit/rescale.hpp"

#include <algorithm>
#include <cmath>

#include "renewal_kit/error.hpp"
#include "renewal_kit/transport.hpp"

namespace renewal_kit {
namespace {

double jump_eps(const Grid& g) { return 1e-6 * g.h; }

double jump_mass_at(const RenewalFunction& a, double tau) {
  double m = 0.0;
  for (const Atom& j : a.jumps) {
    if (std::abs(j.location - tau) <= jump_eps(a.grid)) m += j.mass;
  }
  return m;
}

// Physical time attached to rescaled time t; t = 0 is the initial instant.
double physical_time(const RescaledClock& clock, double t) {
  return t == 0.0 ? 0.0 : tau_of_t(clock, t);
}

}  // namespace

RescaledClock::RescaledClock(RenewalFunction a) : a_(std::move(a)) {
  for (const Atom& j : a_.jumps) {
    const double lo = a_.A.left_limit(j.location);
    const double hi = a_.A(j.location);
    if (hi > lo) intervals_.push_back({lo, hi, j.location});
  }
}

const JumpInterval* RescaledClock::interval_containing(double t) const {
  for (const JumpInterval& iv : intervals_) {
    if (t >= iv.t_lo && t < iv.t_hi) return &iv;
  }
  return nullptr;
}

double RescaledClock::clock_integral(double s0, double s1, double q,
                                     double shift) const {
  if (s1 < s0) throw InvalidArgument("clock integral needs s0 <= s1");
  if (s1 == s0) return 0.0;
  const Grid& g = a_.grid;
  auto e = [&](double tau) { return std::exp(-q * (tau - shift)); };
  const double tau0 = tau_of_t(*this, s0);
  const double tau1 = tau_of_t(*this, s1);
  double res = 0.0;
  if (const JumpInterval* iv = interval_containing(s0)) {
    if (s1 < iv->t_hi || tau1 == tau0) return (s1 - s0) * e(tau0);
    res += (iv->t_hi - s0) * e(tau0);
  }
  // Continuous part of dA over (tau0, tau1).
  const double h = g.h;
  std::size_t k = static_cast<std::size_t>(
      std::max<std::int64_t>(1, cell_index(tau0, h)));
  if (g.node(k) <= tau0) ++k;
  for (; k < g.n; ++k) {
    const double lo = std::max(tau0, g.node(k - 1));
    const double hi = std::min(tau1, g.node(k));
    if (hi <= lo) break;
    const double m = a_.cell_mass[k];
    if (m != 0.0) res += m / (q * h) * (e(lo) - e(hi));
  }
  const double eps = jump_eps(g);
  for (const Atom& j : a_.jumps) {
    if (j.location <= tau0 + eps) continue;
    if (j.location >= tau1 - eps) break;
    res += j.mass * e(j.location);
  }
  if (tau1 > tau0) res += (s1 - a_.A.left_limit(tau1)) * e(tau1);
  return res;
}

RescaledClock make_clock(const MixedMeasure& f0, const MixedMeasure& p,
                         double tau_max, const TruncationPolicy& policy) {
  return RescaledClock(renewal_function(f0, p, tau_max, policy));
}

double horizon_for(const MixedMeasure& f0, const MixedMeasure& p,
                   double t_max) {
  const double mu = p.mean();
  return mu * t_max + f0.mean() + 2.0 * mu + 4.0 * p.grid().h;
}

double tau_of_t(const RescaledClock& clock, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("t must be >= 0");
  return generalized_inverse(clock.renewal().A, t);
}

MixedMeasure renewal_scaled_solution(const MixedMeasure& f0,
                                     const MixedMeasure& p,
                                     const RescaledClock& clock, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("t must be >= 0");
  if (t == 0.0) return f0;
  const RenewalFunction& a = clock.renewal();
  if (const JumpInterval* iv = clock.interval_containing(t)) {
    const double theta = (t - iv->t_lo) / (iv->t_hi - iv->t_lo);
    return measure_solution_at_tau(f0, p, a, iv->tau_star, theta);
  }
  const double tau = tau_of_t(clock, t);
  const double theta = jump_mass_at(a, tau) > 0.0 ? 1.0 : 0.0;
  return measure_solution_at_tau(f0, p, a, tau, theta);
}

MixedMeasure renewal_scaled_solution(const MixedMeasure& f0,
                                     const MixedMeasure& p, double t,
                                     const TruncationPolicy& policy) {
  double tau_max = horizon_for(f0, p, t);
  for (int attempt = 0; attempt < 8; ++attempt) {
    const RescaledClock clock = make_clock(f0, p, tau_max, policy);
    if (t < clock.t_max()) return renewal_scaled_solution(f0, p, clock, t);
    tau_max *= 2.0;
  }
  throw BeyondRange("could not reach the requested t");
}

double measform_horizon(const MixedMeasure& f0, const MixedMeasure& p,
                        double t, double q, double tol) {
  const double mu = p.mean();
  const double b = p.second_moment() / (mu * mu) + 1.0;
  const double tau_t = mu * t + f0.mean();
  const double s = std::max(t, b + (q * tau_t - std::log(tol * q * mu)) / (q * mu));
  return horizon_for(f0, p, s);
}

double measform_rhs(const MixedMeasure& p, const RescaledClock& clock,
                    double t, double q, double tol) {
  if (!(q > 0.0) || !(tol > 0.0)) {
    throw InvalidArgument("measform needs q > 0 and tol > 0");
  }
  const double mu = p.mean();
  const double b = p.second_moment() / (mu * mu) + 1.0;
  const double tau_t = physical_time(clock, t);
  const double s = std::max(t, b + (q * tau_t - std::log(tol * q * mu)) / (q * mu));
  if (s >= clock.t_max()) {
    throw BeyondRange("measform integral needs a longer renewal horizon");
  }
  return (1.0 - laplace(p, q)) * clock.clock_integral(t, s, q, tau_t);
}

double solutionform_residual(const MixedMeasure& f0, const MixedMeasure& p,
                             const RescaledClock& clock, double t, double q) {
  const MixedMeasure ft = renewal_scaled_solution(f0, p, clock, t);
  const double tau_t = physical_time(clock, t);
  const double lhs = laplace(ft, q) * std::exp(-q * tau_t) - laplace(f0, q);
  const double rhs = (1.0 - laplace(p, q)) * clock.clock_integral(0.0, t, q, 0.0);
  return std::abs(lhs + rhs);
}

MixedMeasure mollify(const MixedMeasure& f0, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("mollifier width must be > 0");
  const Grid& g = f0.grid();
  std::vector<double> mass = f0.cell_mass();
  std::vector<double> moment(g.n, 0.0);
  for (std::size_t k = 1; k < g.n; ++k) moment[k] = mass[k] * f0.cell_centroid()[k];
  for (const Atom& a : f0.atoms()) {
    const double lo = std::max(0.0, a.location - 0.5 * eps);
    const double hi = lo + eps;
    if (hi > g.x_max() + 1e-9 * g.h) {
      throw InvalidArgument("mollified atom leaves the grid");
    }
    std::size_t k = static_cast<std::size_t>(
        std::max<std::int64_t>(1, cell_index(lo, g.h)));
    if (g.node(k) <= lo) ++k;
    double x = lo;
    while (x < hi && k < g.n) {
      const double y = std::min(hi, g.node(k));
      const double part = a.mass * (y - x) / eps;
      mass[k] += part;
      moment[k] += part * 0.5 * (x + y);
      x = y;
      ++k;
    }
  }
  std::vector<double> centroid(g.n, 0.0);
  for (std::size_t k = 1; k < g.n; ++k) {
    centroid[k] = mass[k] > 0.0 ? moment[k] / mass[k] : g.node(k) - 0.5 * g.h;
  }
  return MixedMeasure(g, {}, std::move(mass), std::move(centroid));
}

}  // namespace renewal_kit
