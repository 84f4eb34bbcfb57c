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

#ifndef RENEWAL_KIT_DISTRIBUTION_HPP_
#define RENEWAL_KIT_DISTRIBUTION_HPP_

#include <string>
#include <variant>
#include <vector>

#include "renewal_kit/grid.hpp"
#include "renewal_kit/measure.hpp"

namespace renewal_kit {

struct Exponential {
  double rate = 1.0;
};

struct Uniform {
  double a = 0.0;
  double b = 1.0;
};

struct Erlang {
  int k = 1;
  double rate = 1.0;
};

struct Dirac {
  double c = 0.0;
};

struct DistributionSpec;

struct Mixture {
  std::vector<double> weights;
  std::vector<DistributionSpec> components;
};

// Piecewise-linear pdf or cdf through the points (x[i], y[i]).
// A pdf table is normalised to unit mass; a cdf table with y[0] > 0 has an
// atom of that size at x[0].
struct Tabulated {
  enum class Kind { kPdf, kCdf };
  std::string path;
  Kind kind = Kind::kPdf;
  std::vector<double> x;
  std::vector<double> y;
};

struct DistributionSpec {
  std::variant<Exponential, Uniform, Erlang, Dirac, Mixture, Tabulated> law;
};

// Reads a two-column CSV (optional header line).
Tabulated load_table(const std::string& path, Tabulated::Kind kind);

// Throws InvalidArgument when parameters break the family's constraints.
void validate(const DistributionSpec& spec);

// Weighted atoms of the law, merged and sorted.
std::vector<Atom> spec_atoms(const DistributionSpec& spec);
bool has_atoms(const DistributionSpec& spec);

// Absolutely continuous part: mass in (x, inf) and first moment over (x, inf).
double continuous_survival(const DistributionSpec& spec, double x);
double continuous_upper_moment(const DistributionSpec& spec, double x);

double spec_cdf(const DistributionSpec& spec, double x);
double spec_left_cdf(const DistributionSpec& spec, double x);
// Density with closed support endpoints; throws if the law has atoms.
double pdf(const DistributionSpec& spec, double x);
double spec_mean(const DistributionSpec& spec);
double spec_second_moment(const DistributionSpec& spec);

// Exact cell masses and centroids of the continuous part plus the atoms.
// With fold_tail the mass beyond x_max is placed in the last cell so a
// probability law stays a probability measure.
MixedMeasure discretize(const DistributionSpec& spec, const Grid& grid,
                        bool fold_tail = true);

// Pointwise pdf at the grid nodes.
SampledDensity sample_density(const DistributionSpec& spec, const Grid& grid);

// Exact distribution function of the law, for Levy and KS comparisons.
CdfView spec_cdf_view(const DistributionSpec& spec, const Grid& grid);

DistributionSpec exponential(double rate);
DistributionSpec uniform(double a, double b);
DistributionSpec erlang(int k, double rate);
DistributionSpec dirac(double c);
DistributionSpec mixture(std::vector<double> weights,
                         std::vector<DistributionSpec> components);

}  // namespace renewal_kit

#endif  // RENEWAL_KIT_DISTRIBUTION_HPP_
