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

#ifndef RENEWAL_KIT_MONTECARLO_HPP_
#define RENEWAL_KIT_MONTECARLO_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "renewal_kit/distribution.hpp"
#include "renewal_kit/measure.hpp"

namespace renewal_kit {

// SplitMix64. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t state_;
};

// Independent generator for (seed, index); realizations and particles each
// own one so results do not depend on the thread count.
SplitMix64 make_stream(std::uint64_t seed, std::uint64_t index);

// Draws from a law. Named families use closed-form inverses (Erlang as a sum
// of exponentials); tabulated laws invert their CDF numerically.
class Sampler {
 public:
  explicit Sampler(DistributionSpec spec);
  double operator()(SplitMix64& rng) const;

 private:
  DistributionSpec spec_;
};

struct EmpiricalMeasure {
  std::vector<double> samples;  // ascending
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;  // index of the first stream used

  std::size_t n() const { return samples.size(); }
  double cdf(double x) const;
  double left_cdf(double x) const;
  CdfView view() const;
};

// n realizations of R(tau): the first partial sum X_0 + ... + X_i exceeding
// tau, minus tau.
EmpiricalMeasure simulate_residual(const DistributionSpec& f0,
                                   const DistributionSpec& p, double tau,
                                   std::size_t n, std::uint64_t seed);

struct MeanEstimate {
  double estimate;
  double standard_error;
};

// Sample mean of N(tau) = #{i >= 0 : X_0 + ... + X_i <= tau}.
MeanEstimate mean_renewals(const DistributionSpec& f0,
                           const DistributionSpec& p, double tau,
                           std::size_t n, std::uint64_t seed);

// N particles with residuals from f0; failures are replaced in time order
// (ties by particle index) until ceil(N t) replacements have happened. The
// snapshot is taken at the last replacement time; particles already due at
// that instant report residual 0.
EmpiricalMeasure simulate_rescaled_ensemble(const DistributionSpec& f0,
                                            const DistributionSpec& p,
                                            double t, std::size_t n,
                                            std::uint64_t seed);

// sup_x |empirical(x) - reference(x)| including left limits.
double ks_distance(const EmpiricalMeasure& e, const CdfView& reference);

}  // namespace renewal_kit

#endif  // RENEWAL_KIT_MONTECARLO_HPP_
