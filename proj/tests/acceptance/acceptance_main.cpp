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

// Acceptance suite. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria (capped at 1).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "renewal_kit/distribution.hpp"
#include "renewal_kit/measure.hpp"
#include "renewal_kit/montecarlo.hpp"
#include "renewal_kit/renewal.hpp"
#include "renewal_kit/rescale.hpp"
#include "renewal_kit/transport.hpp"

namespace rk = renewal_kit;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

rk::Grid grid(double h, double x_max) { return rk::Grid::from_step(h, x_max); }

// (1 - w) delta_0 + w Exp(1), discretized on g: the closed-form golden law.
rk::MixedMeasure golden_law(double w, const rk::Grid& g) {
  return rk::discretize(
      rk::mixture({1.0 - w, w}, {rk::dirac(0.0), rk::exponential(1.0)}), g);
}

Outcome golden_reproduction() {
  Stopwatch sw;
  const rk::Grid g = grid(0.01, 40.0);
  const rk::MixedMeasure f0 = rk::discretize(rk::dirac(1.0), g);
  const rk::MixedMeasure p = rk::discretize(rk::exponential(1.0), g);
  const rk::RescaledClock clock = rk::make_clock(f0, p, 4.0);
  const rk::RenewalFunction& a = clock.renewal();
  double a_err = 0.0;
  for (std::size_t k = 0; k < a.grid.n; ++k) {
    const double tau = a.grid.node(k);
    if (std::abs(tau - 1.0) < 0.5 * a.grid.h) continue;
    a_err = std::max(a_err, std::abs(a(tau) - (tau < 1.0 ? 0.0 : tau)));
  }
  double clock_err = 0.0;
  for (int i = 1; i < 300; ++i) {
    const double t = 0.01 * i;
    if (std::abs(t - 1.0) < 1e-12) continue;
    clock_err = std::max(clock_err,
                         std::abs(rk::tau_of_t(clock, t) - (t < 1.0 ? 1.0 : t)));
  }
  double levy = 0.0;
  for (double t : {0.25, 0.5, 0.75, 1.0, 2.0}) {
    const rk::MixedMeasure ft = rk::renewal_scaled_solution(f0, p, clock, t);
    levy = std::max(levy, rk::levy_distance(ft, golden_law(std::min(t, 1.0), ft.grid())));
  }
  const double secs = sw.seconds();
  const bool ok = a_err < 1e-6 && clock_err < 1e-6 && levy < 1e-3 && secs < 1.0;
  return {ok, fmt("A err %.2e", a_err) + fmt(", tau(t) err %.2e", clock_err) +
                  fmt(", max levy %.2e", levy) + fmt(", %.3f s", secs)};
}

Outcome boxed_formula() {
  const rk::Grid g = grid(0.01, 40.0);
  double golden_err = 0.0;
  {
    const rk::MixedMeasure f0 = rk::discretize(rk::dirac(1.0), g);
    const rk::MixedMeasure p = rk::discretize(rk::exponential(1.0), g);
    const rk::RescaledClock clock =
        rk::make_clock(f0, p, rk::measform_horizon(f0, p, 0.75, 0.5, 1e-6));
    for (double t : {0.25, 0.75}) {
      for (double q : {0.5, 1.0, 2.0}) {
        const double v = rk::measform_rhs(p, clock, t, q, 1e-6);
        golden_err = std::max(golden_err, std::abs(v - (t / (q + 1.0) + 1.0 - t)));
      }
    }
  }
  double self_err = 0.0;
  const std::vector<std::pair<rk::DistributionSpec, rk::DistributionSpec>> cases = {
      {rk::exponential(1.0), rk::exponential(1.0)},
      {rk::dirac(1.0), rk::dirac(1.0)}};
  for (const auto& [sf0, sp] : cases) {
    const rk::MixedMeasure f0 = rk::discretize(sf0, g);
    const rk::MixedMeasure p = rk::discretize(sp, g);
    const rk::RescaledClock clock =
        rk::make_clock(f0, p, rk::measform_horizon(f0, p, 1.5, 0.5, 1e-6));
    for (double t : {0.25, 0.75, 1.5}) {
      const rk::MixedMeasure ft = rk::renewal_scaled_solution(f0, p, clock, t);
      for (double q : {0.5, 1.0, 2.0}) {
        self_err = std::max(self_err, std::abs(rk::laplace(ft, q) -
                                               rk::measform_rhs(p, clock, t, q, 1e-6)));
      }
    }
  }
  return {golden_err < 1e-3 && self_err < 1e-3,
          fmt("golden err %.2e", golden_err) + fmt(", exp/exp and d1/d1 err %.2e", self_err)};
}

Outcome stationarity() {
  const double h = 0.01;
  const rk::Grid g = grid(h, 40.0);
  const rk::Grid tg = grid(h, 5.0);
  const rk::DensityField u =
      rk::strong_solution(rk::exponential(1.0), rk::exponential(1.0), g, tg);
  double err = 0.0;
  for (std::size_t k = 0; k < tg.n; ++k) {
    for (std::size_t j = 0; j < g.n; ++j) {
      err = std::max(err, std::abs(u.at(j, k) - std::exp(-g.node(j))));
    }
  }
  return {err < 5.0 * h, fmt("sup err %.2e", err) + fmt(" (bound %.2e)", 5.0 * h)};
}

Outcome monte_carlo_residual() {
  const rk::Grid g = grid(0.01, 40.0);
  double worst = 0.0;
  double slowest = 0.0;
  for (const rk::DistributionSpec& law : {rk::exponential(1.0), rk::uniform(0.0, 1.0)}) {
    Stopwatch sw;
    const rk::MixedMeasure m = rk::discretize(law, g);
    const rk::RenewalFunction a = rk::renewal_function(m, m, 3.0 + 2.0 * g.h);
    for (double tau : {0.5, 1.5, 3.0}) {
      const rk::EmpiricalMeasure e = rk::simulate_residual(law, law, tau, 100000, 7);
      const rk::MixedMeasure r = rk::measure_solution_at_tau(m, m, a, tau);
      worst = std::max(worst, rk::ks_distance(e, rk::cdf_view(r)));
    }
    slowest = std::max(slowest, sw.seconds());
  }
  return {worst < 0.01 && slowest < 10.0,
          fmt("max KS %.4f", worst) + fmt(", slowest config %.2f s", slowest)};
}

Outcome renewal_agreement() {
  const rk::Grid g = grid(0.01, 10.0);
  const rk::DistributionSpec u = rk::uniform(0.0, 1.0);
  const rk::MixedMeasure m = rk::discretize(u, g);
  const rk::RenewalFunction a = rk::renewal_function(m, m, 2.0);
  rk::TruncationPolicy half;
  half.tol = 0.5e-9;
  const rk::RenewalFunction b = rk::renewal_function(m, m, 2.0, half);
  const rk::MeanEstimate mc = rk::mean_renewals(u, u, 1.0, 100000, 11);
  const double z = std::abs(mc.estimate - a(1.0)) / mc.standard_error;
  const double drift = std::abs(a(1.0) - b(1.0));
  return {z < 3.0 && drift < 1e-3,
          fmt("A(1) %.6f", a(1.0)) + fmt(", MC %.6f", mc.estimate) +
              fmt(", |z| %.2f", z) + fmt(", tol-halving drift %.1e", drift)};
}

rk::DistributionSpec random_mixture(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double w = 0.2 + 0.6 * unit(gen);
  const double rate = 0.5 + 2.0 * unit(gen);
  const double lo = 0.1 + unit(gen);
  return rk::mixture({w, 1.0 - w}, {rk::exponential(rate), rk::uniform(lo, lo + 1.0 + unit(gen))});
}

Outcome lorden_audit() {
  std::mt19937_64 gen(2026);
  const std::vector<rk::DistributionSpec> laws = {
      rk::exponential(1.0), rk::uniform(0.0, 1.0), rk::erlang(2, 1.0),
      rk::dirac(1.0), random_mixture(gen), random_mixture(gen)};
  const rk::Grid g = grid(0.01, 30.0);
  double excess = -1e300;
  for (const rk::DistributionSpec& law : laws) {
    const rk::MixedMeasure p = rk::discretize(law, g);
    const rk::RenewalFunction a = rk::renewal_function(p, p, 20.0);
    for (std::size_t k = 0; k < a.grid.n; ++k) {
      const double tau = a.grid.node(k);
      excess = std::max(excess, a(tau) - rk::lorden_bound(p, tau));
    }
  }
  return {excess <= 0.0, fmt("max A - bound %.3f over 6 laws", excess)};
}

// Locations on multiples of 1/4 so that atoms sit exactly on the h = 0.05 grid
// or at exactly representable offsets from it.
rk::DistributionSpec random_law(std::mt19937_64& gen, bool allow_zero_atom) {
  std::uniform_int_distribution<int> kind(0, 4);
  std::uniform_int_distribution<int> quarter(allow_zero_atom ? 0 : 1, 12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (kind(gen)) {
    case 0:
      return rk::exponential(0.5 + 2.0 * unit(gen));
    case 1: {
      const double a = 0.25 * quarter(gen);
      return rk::uniform(allow_zero_atom ? a : std::max(a, 0.0), a + 0.25 * (1 + quarter(gen)));
    }
    case 2:
      return rk::erlang(1 + static_cast<int>(3 * unit(gen)), 1.0 + unit(gen));
    case 3:
      return rk::dirac(0.25 * quarter(gen));
    default: {
      const double w = 0.1 + 0.8 * unit(gen);
      return rk::mixture({w, 1.0 - w},
                         {rk::dirac(0.25 * quarter(gen)), rk::exponential(0.5 + unit(gen))});
    }
  }
}

Outcome probability_preservation() {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const rk::Grid g = grid(0.05, 40.0);
  double worst = 0.0;
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    const rk::DistributionSpec sf0 = random_law(gen, true);
    const rk::DistributionSpec sp = random_law(gen, false);
    const double t = 3.0 * unit(gen);
    const rk::MixedMeasure f0 = rk::discretize(sf0, g);
    const rk::MixedMeasure p = rk::discretize(sp, g);
    const double err = std::abs(rk::total_mass(rk::renewal_scaled_solution(f0, p, t)) - 1.0);
    worst = std::max(worst, err);
    if (!(err <= 1e-6)) ++bad;
  }
  return {bad == 0, fmt("worst |mass - 1| %.2e", worst) + fmt(", %g failing cases", bad)};
}

Outcome continuity_in_t() {
  const rk::Grid g = grid(0.01, 40.0);
  const rk::MixedMeasure f0 = rk::discretize(
      rk::mixture({0.5, 0.5}, {rk::dirac(0.5), rk::uniform(0.0, 2.0)}), g);
  const rk::MixedMeasure p = rk::discretize(rk::exponential(1.0), g);
  const rk::RescaledClock clock = rk::make_clock(f0, p, rk::horizon_for(f0, p, 3.1));
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> unit(0.0, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double t = unit(gen);
    worst = std::max(worst, rk::levy_distance(rk::renewal_scaled_solution(f0, p, clock, t),
                                              rk::renewal_scaled_solution(f0, p, clock, t + 1e-3)));
  }
  return {worst < 0.01, fmt("max levy(F_t, F_t+1e-3) %.2e over 20 t", worst)};
}

Outcome mollified_convergence() {
  const rk::Grid g = grid(0.01, 40.0);
  const rk::MixedMeasure f0 = rk::discretize(rk::dirac(1.0), g);
  const rk::MixedMeasure p = rk::discretize(rk::exponential(1.0), g);
  const rk::RescaledClock clock = rk::make_clock(f0, p, rk::horizon_for(f0, p, 3.0));
  std::vector<double> eps_list = {0.2, 0.1, 0.05};
  std::vector<rk::MixedMeasure> smoothed;
  std::vector<rk::RescaledClock> clocks;
  for (double eps : eps_list) {
    smoothed.push_back(rk::mollify(f0, eps));
    clocks.push_back(rk::make_clock(smoothed.back(), p, rk::horizon_for(smoothed.back(), p, 3.0)));
  }
  bool monotone = true;
  double last = 0.0;
  std::string detail;
  for (double t : {1.0, 1.5, 2.0, 3.0}) {
    if (clock.interval_containing(t) != nullptr) continue;
    const rk::MixedMeasure ft = rk::renewal_scaled_solution(f0, p, clock, t);
    double prev = 1e300;
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
      const double d = rk::levy_distance(
          rk::renewal_scaled_solution(smoothed[i], p, clocks[i], t), ft);
      if (d > prev + 1e-12) monotone = false;
      prev = d;
    }
    last = std::max(last, prev);
  }
  return {monotone && last < 0.1,
          std::string(monotone ? "nonincreasing" : "NOT nonincreasing") +
              fmt(", max levy at eps 0.05 %.3e", last)};
}

Outcome ensemble() {
  Stopwatch sw;
  const rk::DistributionSpec sf0 = rk::dirac(1.0);
  const rk::DistributionSpec sp = rk::exponential(1.0);
  const rk::EmpiricalMeasure e = rk::simulate_rescaled_ensemble(sf0, sp, 0.5, 10000, 5);
  const rk::Grid g = grid(0.01, 40.0);
  const rk::MixedMeasure f0 = rk::discretize(sf0, g);
  const rk::MixedMeasure p = rk::discretize(sp, g);
  const rk::MixedMeasure ft = rk::renewal_scaled_solution(f0, p, 0.5);
  const double d = rk::levy_distance(e.view(), rk::cdf_view(ft));
  const double secs = sw.seconds();
  return {d < 0.02 && secs < 5.0, fmt("levy %.4f", d) + fmt(", %.2f s", secs)};
}

double observed_order(double r1, double r2) { return std::log2(r1 / r2); }

Outcome pde_convergence() {
  std::string detail;
  bool ok = true;
  const std::vector<std::pair<std::string, rk::DistributionSpec>> cases = {
      {"exp/exp", rk::exponential(1.0)}, {"erlang2/exp", rk::erlang(2, 1.0)}};
  for (const auto& [name, u0] : cases) {
    std::vector<double> res;
    for (double h : {0.04, 0.02, 0.01}) {
      const rk::Grid g = grid(h, 20.0);
      const rk::Grid tg = grid(h, 3.0);
      const rk::DensityField u = rk::strong_solution(u0, rk::exponential(1.0), g, tg);
      res.push_back(rk::pde_residual(u, rk::sample_density(rk::exponential(1.0), g)));
    }
    const double o1 = observed_order(res[0], res[1]);
    const double o2 = observed_order(res[1], res[2]);
    ok = ok && o1 >= 0.8 && o2 >= 0.8;
    detail += name + fmt(" orders %.2f", o1) + fmt("/%.2f; ", o2);
  }
  const double h = 0.01;
  rk::DensityField fake;
  fake.x_grid = grid(h, 20.0);
  fake.tau_grid = grid(h, 3.0);
  fake.values.resize(fake.x_grid.n * fake.tau_grid.n);
  fake.trace.resize(fake.tau_grid.n);
  for (std::size_t k = 0; k < fake.tau_grid.n; ++k) {
    for (std::size_t j = 0; j < fake.x_grid.n; ++j) {
      fake.values[k * fake.x_grid.n + j] =
          std::exp(-fake.x_grid.node(j) - fake.tau_grid.node(k));
    }
    fake.trace[k] = std::exp(-fake.tau_grid.node(k));
  }
  const double r = rk::pde_residual(fake, rk::sample_density(rk::exponential(1.0), fake.x_grid));
  ok = ok && r > 0.1;
  return {ok, detail + fmt("non-solution residual %.3f", r)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"golden point-mass reproduction", golden_reproduction},
      {"boxed Laplace formula", boxed_formula},
      {"stationarity of Exp(1)", stationarity},
      {"Monte Carlo residual KS", monte_carlo_residual},
      {"renewal function vs Monte Carlo", renewal_agreement},
      {"Lorden audit", lorden_audit},
      {"probability preservation", probability_preservation},
      {"continuity in t", continuity_in_t},
      {"mollified convergence", mollified_convergence},
      {"rescaled ensemble", ensemble},
      {"PDE residual convergence", pde_convergence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
