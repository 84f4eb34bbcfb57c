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

#ifndef RENEWAL_KIT_RESCALE_HPP_
#define RENEWAL_KIT_RESCALE_HPP_

#include <vector>

#include "renewal_kit/measure.hpp"
#include "renewal_kit/renewal.hpp"

namespace renewal_kit {

// A jump of A at tau_star seen from the t side: tau(t) = tau_star on
// [t_lo, t_hi).
struct JumpInterval {
  double t_lo;
  double t_hi;
  double tau_star;
};

// The clock t = A(tau) and its cadlag inverse tau(t) = A^dagger(t).
class RescaledClock {
 public:
  explicit RescaledClock(RenewalFunction a);

  const RenewalFunction& renewal() const { return a_; }
  const std::vector<JumpInterval>& jump_intervals() const { return intervals_; }
  // Largest t the clock can invert.
  double t_max() const { return a_.A.sup(); }
  const JumpInterval* interval_containing(double t) const;

  // int_{s0}^{s1} exp(-q (tau(s) - shift)) ds, exact for the stored A.
  double clock_integral(double s0, double s1, double q, double shift) const;

 private:
  RenewalFunction a_;
  std::vector<JumpInterval> intervals_;
};

RescaledClock make_clock(const MixedMeasure& f0, const MixedMeasure& p,
                         double tau_max, const TruncationPolicy& policy = {});

// Physical horizon guaranteeing A(tau_max) > t_max (Wald's identity bound).
double horizon_for(const MixedMeasure& f0, const MixedMeasure& p,
                   double t_max);

// Throws BeyondRange when t >= clock.t_max().
double tau_of_t(const RescaledClock& clock, double t);

// F_t, the residual-time law after t expected renewals. t = 0 returns f0 as
// given. Inside a jump interval the jump is renewed in proportion
// (t - t_lo) / (t_hi - t_lo); a jump landed on from outside any interval is
// fully renewed.
MixedMeasure renewal_scaled_solution(const MixedMeasure& f0,
                                     const MixedMeasure& p,
                                     const RescaledClock& clock, double t);
// Sizes the horizon from t.
MixedMeasure renewal_scaled_solution(const MixedMeasure& f0,
                                     const MixedMeasure& p, double t,
                                     const TruncationPolicy& policy = {});

// (1 - L_P(q)) int_t^inf exp(q (tau(t) - tau(s))) ds, the upper limit taken
// from the Lorden bound so that the dropped tail is below tol. Throws
// BeyondRange when the clock is too short.
double measform_rhs(const MixedMeasure& p, const RescaledClock& clock,
                    double t, double q, double tol);

// Minimal horizon for measform_rhs at (t, q, tol).
double measform_horizon(const MixedMeasure& f0, const MixedMeasure& p,
                        double t, double q, double tol);

// |L(F_t) e^{-q tau(t)} - L(F_0) + (1 - L_P(q)) int_0^t e^{-q tau(s)} ds|.
double solutionform_residual(const MixedMeasure& f0, const MixedMeasure& p,
                             const RescaledClock& clock, double t, double q);

// Each atom becomes a uniform density of equal mass on an interval of width
// eps around it (shifted right when it would cross the origin).
MixedMeasure mollify(const MixedMeasure& f0, double eps);

}  // namespace renewal_kit

#endif  // RENEWAL_KIT_RESCALE_HPP_
