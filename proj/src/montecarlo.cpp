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

#include "renewal_kit/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <utility>

#include "renewal_kit/error.hpp"

namespace renewal_kit {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// -log(U) with U in (0, 1].
double standard_exponential(SplitMix64& rng) {
  return -std::log1p(-rng.uniform());
}

double draw(const DistributionSpec& spec, SplitMix64& rng) {
  return std::visit(
      Overloaded{
          [&](const Exponential& e) { return standard_exponential(rng) / e.rate; },
          [&](const Uniform& u) { return u.a + (u.b - u.a) * rng.uniform(); },
          [&](const Erlang& e) {
            double s = 0.0;
            for (int i = 0; i < e.k; ++i) s += standard_exponential(rng);
            return s / e.rate;
          },
          [&](const Dirac& d) { return d.c; },
          [&](const Mixture& m) {
            const double u = rng.uniform();
            double acc = 0.0;
            std::size_t pick = m.components.size() - 1;
            for (std::size_t i = 0; i < m.weights.size(); ++i) {
              acc += m.weights[i];
              if (u < acc) {
                pick = i;
                break;
              }
            }
            return draw(m.components[pick], rng);
          },
          [&](const Tabulated& t) {
            const double u = rng.uniform();
            if (u < spec_cdf(spec, t.x.front())) return t.x.front();
            double lo = t.x.front();
            double hi = t.x.back();
            for (int it = 0; it < 60; ++it) {
              const double mid = 0.5 * (lo + hi);
              if (spec_cdf(spec, mid) > u) {
                hi = mid;
              } else {
                lo = mid;
              }
            }
            return 0.5 * (lo + hi);
          },
      },
      spec.law);
}

void check_holding_law(const DistributionSpec& p) {
  validate(p);
  for (const Atom& a : spec_atoms(p)) {
    if (a.location == 0.0) {
      throw InvalidArgument("holding-time law with an atom at 0");
    }
  }
}

}  // namespace

SplitMix64::result_type SplitMix64::operator()() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix(state_);
}

double SplitMix64::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

SplitMix64 make_stream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(mix(seed ^ mix(index + 0x632be59bd9b4e019ULL)));
}

Sampler::Sampler(DistributionSpec spec) : spec_(std::move(spec)) {
  validate(spec_);
}

double Sampler::operator()(SplitMix64& rng) const { return draw(spec_, rng); }

double EmpiricalMeasure::cdf(double x) const {
  const auto it = std::upper_bound(samples.begin(), samples.end(), x);
  return static_cast<double>(it - samples.begin()) /
         static_cast<double>(samples.size());
}

double EmpiricalMeasure::left_cdf(double x) const {
  const auto it = std::lower_bound(samples.begin(), samples.end(), x);
  return static_cast<double>(it - samples.begin()) /
         static_cast<double>(samples.size());
}

CdfView EmpiricalMeasure::view() const {
  std::vector<double> b = samples;
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return CdfView{[this](double x) { return cdf(x); },
                 [this](double x) { return left_cdf(x); }, std::move(b)};
}

EmpiricalMeasure simulate_residual(const DistributionSpec& f0,
                                   const DistributionSpec& p, double tau,
                                   std::size_t n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("need at least one realization");
  if (!(tau >= 0.0)) throw InvalidArgument("tau must be >= 0");
  const Sampler init(f0);
  check_holding_law(p);
  const Sampler hold(p);
  EmpiricalMeasure out;
  out.seed = seed;
  out.samples.resize(n);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    SplitMix64 rng = make_stream(seed, static_cast<std::uint64_t>(i));
    double s = init(rng);
    while (s <= tau) s += hold(rng);
    out.samples[static_cast<std::size_t>(i)] = s - tau;
  }
  std::sort(out.samples.begin(), out.samples.end());
  return out;
}

MeanEstimate mean_renewals(const DistributionSpec& f0,
                           const DistributionSpec& p, double tau,
                           std::size_t n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("need at least one realization");
  if (!(tau >= 0.0)) throw InvalidArgument("tau must be >= 0");
  const Sampler init(f0);
  check_holding_law(p);
  const Sampler hold(p);
  std::vector<double> counts(n);
  const auto total = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < total; ++i) {
    SplitMix64 rng = make_stream(seed, static_cast<std::uint64_t>(i));
    double s = init(rng);
    std::uint64_t k = 0;
    while (s <= tau) {
      ++k;
      s += hold(rng);
    }
    counts[static_cast<std::size_t>(i)] = static_cast<double>(k);
  }
  double mean = 0.0;
  for (double c : counts) mean += c;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double c : counts) ss += (c - mean) * (c - mean);
  const double var = n > 1 ? ss / static_cast<double>(n - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

EmpiricalMeasure simulate_rescaled_ensemble(const DistributionSpec& f0,
                                            const DistributionSpec& p,
                                            double t, std::size_t n,
                                            std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("need at least one particle");
  if (!(t >= 0.0)) throw InvalidArgument("t must be >= 0");
  const Sampler init(f0);
  check_holding_law(p);
  const Sampler hold(p);
  std::vector<SplitMix64> rngs;
  rngs.reserve(n);
  std::vector<double> fail(n);
  for (std::size_t i = 0; i < n; ++i) {
    rngs.push_back(make_stream(seed, i));
    fail[i] = init(rngs[i]);
  }
  const double target = static_cast<double>(n) * t;
  const auto replacements =
      static_cast<std::uint64_t>(std::ceil(target - 1e-9 * target));
  using Event = std::pair<double, std::size_t>;
  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> queue;
  for (std::size_t i = 0; i < n; ++i) queue.push({fail[i], i});
  double now = 0.0;
  for (std::uint64_t r = 0; r < replacements; ++r) {
    const auto [time, i] = queue.top();
    queue.pop();
    now = time;
    fail[i] = time + hold(rngs[i]);
    queue.push({fail[i], i});
  }
  EmpiricalMeasure out;
  out.seed = seed;
  out.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.samples[i] = std::max(0.0, fail[i] - now);
  }
  std::sort(out.samples.begin(), out.samples.end());
  return out;
}

double ks_distance(const EmpiricalMeasure& e, const CdfView& reference) {
  double worst = 0.0;
  for (double x : e.samples) {
    worst = std::max(worst, std::abs(e.cdf(x) - reference.value(x)));
    worst = std::max(worst, std::abs(e.left_cdf(x) - reference.left_value(x)));
  }
  for (double x : reference.breakpoints) {
    worst = std::max(worst, std::abs(e.cdf(x) - reference.value(x)));
    worst = std::max(worst, std::abs(e.left_cdf(x) - reference.left_value(x)));
  }
  return worst;
}

}  // namespace renewal_kit
