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

#ifndef RENEWAL_KIT_MEASURE_HPP_
#define RENEWAL_KIT_MEASURE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "renewal_kit/grid.hpp"

namespace renewal_kit {

struct Atom {
  double location;
  double mass;
};

// Sorts by location and merges atoms closer than tol (mass-weighted location).
std::vector<Atom> merge_atoms(std::vector<Atom> atoms, double tol);

// Finite measure on [0, inf): a sorted atom list plus an absolutely
// continuous part stored per lattice cell as (mass, centroid).
//
// Within a cell the distribution function interpolates linearly between
// nodes. Laplace transforms and convolution treat the cell mass as sitting at
// its centroid, which keeps first moments exact.
class MixedMeasure {
 public:
  // cell_mass and cell_centroid have grid.n entries; entry k describes the
  // cell (x_{k-1}, x_k] and entry 0 must be zero.
  MixedMeasure(Grid grid, std::vector<Atom> atoms,
               std::vector<double> cell_mass,
               std::vector<double> cell_centroid);

  static MixedMeasure zero(const Grid& grid);
  static MixedMeasure from_atoms(const Grid& grid, std::vector<Atom> atoms);
  // Trapezoid cells from nodal density values; samples.size() == grid.n.
  static MixedMeasure from_density_samples(const Grid& grid,
                                           std::span<const double> samples);

  const Grid& grid() const { return grid_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<double>& cell_mass() const { return mass_; }
  const std::vector<double>& cell_centroid() const { return centroid_; }

  double atom_mass() const { return atom_total_; }
  double density_mass() const { return cumulative_.back(); }

  // Distribution function G(x) = M([0, x]); zero for x < 0.
  double value(double x) const;
  // Left limit G(x-) = M([0, x)).
  double left_value(double x) const;
  // Mass of atoms within tol of x.
  double atom_mass_near(double x, double tol) const;

  double mean() const;
  // Cells contribute centroid^2 + h^2/12.
  double second_moment() const;

  // Density estimate at each node from neighbouring cell masses.
  std::vector<double> nodal_density() const;

  // Points where G may fail to be linear: nodes and atom locations.
  std::vector<double> breakpoints() const;

 private:
  Grid grid_;
  std::vector<Atom> atoms_;
  std::vector<double> mass_;
  std::vector<double> centroid_;
  std::vector<double> cumulative_;
  std::vector<double> atom_cum_;
  double atom_total_ = 0.0;
};

double total_mass(const MixedMeasure& m);
// Throws InvalidArgument for x < 0.
double cdf(const MixedMeasure& m, double x);
// Real q > 0 only.
double laplace(const MixedMeasure& m, double q);

// Output lives on [0, min(x1 + x2, x_cap)]; mass beyond is dropped.
// Cells of m1 are spread uniformly over their cell, cells of m2 act as point
// masses at their centroids.
MixedMeasure convolve(const MixedMeasure& m1, const MixedMeasure& m2,
                      double x_cap = std::numeric_limits<double>::infinity());

// Shift-and-split table for sliding a uniform cell by every point of a
// measure (atoms and cell centroids). A cell j moved by c = (i0 + fr) h lands
// in cells j + i0 and j + i0 + 1; mass[d] collects the weight landing at
// offset d and offset_moment[d] the first moment measured from the left node
// of the target cell.
struct ShiftKernel {
  std::vector<double> mass;
  std::vector<double> offset_moment;
};
ShiftKernel make_shift_kernel(const MixedMeasure& m, std::size_t length);

// convolve() onto a caller-chosen output grid with a prebuilt kernel of m2
// (kernel.mass.size() >= out.n).
MixedMeasure convolve_with_kernel(const MixedMeasure& m1,
                                  const MixedMeasure& m2,
                                  const ShiftKernel& kernel, const Grid& out);

// Nodal density samples on a grid; zero outside [0, x_max].
struct SampledDensity {
  Grid grid;
  std::vector<double> values;

  double at(std::int64_t k) const {
    return (k < 0 || k >= static_cast<std::int64_t>(values.size()))
               ? 0.0
               : values[static_cast<std::size_t>(k)];
  }
  double operator()(double x) const;
  double trapezoid_mass() const;
};

// Cadlag nondecreasing function: continuous part given by nodal values with
// linear interpolation, plus explicit jumps. Constant beyond x_max.
struct Jump {
  double location;
  double size;
};

class NonDecreasingFn {
 public:
  NonDecreasingFn(Grid grid, std::vector<double> continuous,
                  std::vector<Jump> jumps);

  double operator()(double x) const;
  double left_limit(double x) const;
  double continuous_part(double x) const;
  double jumps_through(double x) const;
  double jumps_before(double x) const;

  const Grid& grid() const { return grid_; }
  const std::vector<double>& continuous() const { return cont_; }
  const std::vector<Jump>& jumps() const { return jumps_; }
  double sup() const { return (*this)(grid_.x_max()); }

 private:
  Grid grid_;
  std::vector<double> cont_;
  std::vector<Jump> jumps_;
  std::vector<double> jump_cum_;
};

// inf{s : f(s) > q}. Throws BeyondRange when q >= f(x_max).
double generalized_inverse(const NonDecreasingFn& f, double q);

// Distribution function seen by the Levy metric. value must be cadlag and
// piecewise linear between consecutive breakpoints; left_value is its left
// limit.
struct CdfView {
  std::function<double(double)> value;
  std::function<double(double)> left_value;
  std::vector<double> breakpoints;
};

CdfView cdf_view(const MixedMeasure& m);
double levy_distance(const CdfView& a, const CdfView& b);
double levy_distance(const MixedMeasure& a, const MixedMeasure& b);

}  // namespace renewal_kit

#endif  // RENEWAL_KIT_MEASURE_HPP_
