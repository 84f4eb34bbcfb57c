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

#include "renewal_kit/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "renewal_kit/error.hpp"
#include "renewal_kit/kernels.hpp"

namespace renewal_kit {
namespace {

constexpr double kMassSlack = 1e-3;
constexpr double kTinyAtom = 1e-12;

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

}  // namespace

std::vector<Atom> merge_atoms(std::vector<Atom> atoms, double tol) {
  std::erase_if(atoms, [](const Atom& a) { return a.mass == 0.0; });
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
    return a.location < b.location;
  });
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const Atom& a : atoms) {
    if (!out.empty() && a.location - out.back().location <= tol) {
      Atom& b = out.back();
      const double m = b.mass + a.mass;
      b.location = (b.location * b.mass + a.location * a.mass) / m;
      b.mass = m;
    } else {
      out.push_back(a);
    }
  }
  return out;
}

MixedMeasure::MixedMeasure(Grid grid, std::vector<Atom> atoms,
                           std::vector<double> cell_mass,
                           std::vector<double> cell_centroid)
    : grid_(grid),
      mass_(std::move(cell_mass)),
      centroid_(std::move(cell_centroid)) {
  if (grid_.n < 2 || !(grid_.h > 0.0)) throw InvalidArgument("bad grid");
  if (mass_.size() != grid_.n || centroid_.size() != grid_.n) {
    throw InvalidArgument("cell arrays must have grid.n entries");
  }
  const double h = grid_.h;
  mass_[0] = 0.0;
  centroid_[0] = 0.0;
  for (std::size_t k = 1; k < grid_.n; ++k) {
    double& m = mass_[k];
    if (std::isnan(m) || m < -1e-12) {
      throw InvalidArgument("cell mass must be nonnegative");
    }
    if (m < 0.0) m = 0.0;
    const double lo = grid_.node(k - 1);
    const double hi = lo + h;
    if (m == 0.0 || !std::isfinite(centroid_[k])) {
      centroid_[k] = lo + 0.5 * h;
    } else {
      centroid_[k] = std::clamp(centroid_[k], lo, hi);
    }
  }
  for (Atom& a : atoms) {
    if (!(a.mass >= 0.0) || !std::isfinite(a.location)) {
      throw InvalidArgument("atom mass must be nonnegative");
    }
    if (a.location < 0.0) {
      if (a.location < -1e-12) throw InvalidArgument("atom location < 0");
      a.location = 0.0;
    }
  }
  atoms_ = merge_atoms(std::move(atoms), 0.0);
  cumulative_.resize(grid_.n);
  std::partial_sum(mass_.begin(), mass_.end(), cumulative_.begin());
  atom_total_ = 0.0;
  atom_cum_.reserve(atoms_.size());
  for (const Atom& a : atoms_) {
    atom_total_ += a.mass;
    atom_cum_.push_back(atom_total_);
  }
  if (atom_total_ + cumulative_.back() > 1.0 + kMassSlack) {
    throw InvalidArgument("total mass exceeds one");
  }
}

MixedMeasure MixedMeasure::zero(const Grid& grid) {
  return MixedMeasure(grid, {}, std::vector<double>(grid.n, 0.0),
                      std::vector<double>(grid.n, 0.0));
}

MixedMeasure MixedMeasure::from_atoms(const Grid& grid,
                                      std::vector<Atom> atoms) {
  return MixedMeasure(grid, merge_atoms(std::move(atoms), 1e-12),
                      std::vector<double>(grid.n, 0.0),
                      std::vector<double>(grid.n, 0.0));
}

MixedMeasure MixedMeasure::from_density_samples(
    const Grid& grid, std::span<const double> samples) {
  if (samples.size() != grid.n) {
    throw InvalidArgument("density samples must have grid.n entries");
  }
  std::vector<double> mass(grid.n, 0.0);
  std::vector<double> centroid(grid.n, 0.0);
  const double h = grid.h;
  for (std::size_t k = 0; k < grid.n; ++k) {
    if (!(samples[k] >= 0.0)) {
      throw InvalidArgument("density samples must be nonnegative");
    }
  }
  for (std::size_t k = 1; k < grid.n; ++k) {
    const double a = samples[k - 1];
    const double b = samples[k];
    mass[k] = 0.5 * h * (a + b);
    centroid[k] = grid.node(k - 1) +
                  (a + b > 0.0 ? h * (a + 2.0 * b) / (3.0 * (a + b)) : 0.5 * h);
  }
  return MixedMeasure(grid, {}, std::move(mass), std::move(centroid));
}

double MixedMeasure::value(double x) const {
  if (x < 0.0) return 0.0;
  const auto it = std::upper_bound(
      atoms_.begin(), atoms_.end(), x,
      [](double v, const Atom& a) { return v < a.location; });
  const std::size_t na = static_cast<std::size_t>(it - atoms_.begin());
  const double atoms = na == 0 ? 0.0 : atom_cum_[na - 1];
  if (x >= grid_.x_max()) return atoms + cumulative_.back();
  const double r = x / grid_.h;
  const std::size_t k = static_cast<std::size_t>(r);
  const double fr = r - static_cast<double>(k);
  const double lat =
      k + 1 < grid_.n
          ? cumulative_[k] + fr * (cumulative_[k + 1] - cumulative_[k])
          : cumulative_.back();
  return atoms + lat;
}

double MixedMeasure::left_value(double x) const {
  if (x <= 0.0) return 0.0;
  const auto it = std::lower_bound(
      atoms_.begin(), atoms_.end(), x,
      [](const Atom& a, double v) { return a.location < v; });
  const std::size_t na = static_cast<std::size_t>(it - atoms_.begin());
  const double atoms = na == 0 ? 0.0 : atom_cum_[na - 1];
  if (x >= grid_.x_max()) return atoms + cumulative_.back();
  const double r = x / grid_.h;
  const std::size_t k = static_cast<std::size_t>(r);
  const double fr = r - static_cast<double>(k);
  const double lat =
      k + 1 < grid_.n
          ? cumulative_[k] + fr * (cumulative_[k + 1] - cumulative_[k])
          : cumulative_.back();
  return atoms + lat;
}

double MixedMeasure::atom_mass_near(double x, double tol) const {
  double m = 0.0;
  for (const Atom& a : atoms_) {
    if (std::abs(a.location - x) <= tol) m += a.mass;
  }
  return m;
}

double MixedMeasure::mean() const {
  double s = 0.0;
  for (const Atom& a : atoms_) s += a.location * a.mass;
  for (std::size_t k = 1; k < grid_.n; ++k) s += mass_[k] * centroid_[k];
  return s;
}

double MixedMeasure::second_moment() const {
  const double var_cell = grid_.h * grid_.h / 12.0;
  double s = 0.0;
  for (const Atom& a : atoms_) s += a.location * a.location * a.mass;
  for (std::size_t k = 1; k < grid_.n; ++k) {
    s += mass_[k] * (centroid_[k] * centroid_[k] + var_cell);
  }
  return s;
}

std::vector<double> MixedMeasure::nodal_density() const {
  const std::size_t n = grid_.n;
  const double h = grid_.h;
  std::vector<double> out(n, 0.0);
  out[0] = mass_[1] / h;
  out[n - 1] = mass_[n - 1] / h;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    out[k] = 0.5 * (mass_[k] + mass_[k + 1]) / h;
  }
  return out;
}

std::vector<double> MixedMeasure::breakpoints() const {
  std::vector<double> b;
  b.reserve(grid_.n + atoms_.size());
  for (std::size_t k = 0; k < grid_.n; ++k) b.push_back(grid_.node(k));
  for (const Atom& a : atoms_) b.push_back(a.location);
  std::sort(b.begin(), b.end());
  return b;
}

double total_mass(const MixedMeasure& m) {
  return m.atom_mass() + m.density_mass();
}

double cdf(const MixedMeasure& m, double x) {
  if (!(x >= 0.0)) throw InvalidArgument("cdf argument must be >= 0");
  return m.value(x);
}

double laplace(const MixedMeasure& m, double q) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw InvalidArgument("Laplace argument must be real and > 0");
  }
  double s = 0.0;
  for (const Atom& a : m.atoms()) s += a.mass * std::exp(-q * a.location);
  const auto& mass = m.cell_mass();
  const auto& c = m.cell_centroid();
  for (std::size_t k = 1; k < mass.size(); ++k) {
    if (mass[k] != 0.0) s += mass[k] * std::exp(-q * c[k]);
  }
  return s;
}

ShiftKernel make_shift_kernel(const MixedMeasure& m, std::size_t length) {
  ShiftKernel kern;
  kern.mass.assign(length, 0.0);
  kern.offset_moment.assign(length, 0.0);
  const double h = m.grid().h;
  const std::int64_t len = as_int(length);
  auto add = [&](double c, double w) {
    std::int64_t i0 = 0;
    double fr = 0.0;
    split_shift(c, h, &i0, &fr);
    if (i0 < len) {
      const double wa = w * (1.0 - fr);
      kern.mass[static_cast<std::size_t>(i0)] += wa;
      kern.offset_moment[static_cast<std::size_t>(i0)] +=
          wa * 0.5 * (1.0 + fr) * h;
    }
    if (fr > 0.0 && i0 + 1 < len) {
      const double wb = w * fr;
      kern.mass[static_cast<std::size_t>(i0 + 1)] += wb;
      kern.offset_moment[static_cast<std::size_t>(i0 + 1)] += wb * 0.5 * fr * h;
    }
  };
  for (const Atom& a : m.atoms()) add(a.location, a.mass);
  const auto& mass = m.cell_mass();
  const auto& c = m.cell_centroid();
  for (std::size_t k = 1; k < mass.size(); ++k) {
    if (mass[k] != 0.0) add(c[k], mass[k]);
  }
  return kern;
}

MixedMeasure convolve(const MixedMeasure& m1, const MixedMeasure& m2,
                      double x_cap) {
  if (!m1.grid().same_step(m2.grid())) {
    throw InvalidArgument("convolve needs a common grid step");
  }
  const Grid out = Grid::from_step(
      m1.grid().h, std::min(m1.grid().x_max() + m2.grid().x_max(), x_cap));
  return convolve_with_kernel(m1, m2, make_shift_kernel(m2, out.n), out);
}

MixedMeasure convolve_with_kernel(const MixedMeasure& m1,
                                  const MixedMeasure& m2,
                                  const ShiftKernel& kernel, const Grid& out) {
  if (!m1.grid().same_step(out) || !m2.grid().same_step(out)) {
    throw InvalidArgument("convolve needs a common grid step");
  }
  if (kernel.mass.size() < out.n) throw InvalidArgument("kernel too short");
  const double h = out.h;
  const std::size_t n = out.n;
  const double limit = out.x_max() + 1e-9 * h;
  std::vector<double> mass(n, 0.0);
  std::vector<double> moment(n, 0.0);
  auto deposit = [&](double pos, double w) {
    const std::int64_t idx = std::max<std::int64_t>(1, cell_index(pos, h));
    if (idx >= as_int(n)) return;
    mass[static_cast<std::size_t>(idx)] += w;
    moment[static_cast<std::size_t>(idx)] += w * pos;
  };

  std::vector<Atom> atoms;
  for (const Atom& a : m1.atoms()) {
    for (const Atom& b : m2.atoms()) {
      const double loc = a.location + b.location;
      if (loc <= limit) atoms.push_back({std::min(loc, out.x_max()), a.mass * b.mass});
    }
    const auto& mb = m2.cell_mass();
    const auto& cb = m2.cell_centroid();
    for (std::size_t k = 1; k < mb.size(); ++k) {
      if (mb[k] != 0.0) deposit(a.location + cb[k], a.mass * mb[k]);
    }
  }

  std::vector<double> shifted(n, 0.0);
  std::vector<double> offset(n, 0.0);
  const std::span<const double> km(kernel.mass.data(), n);
  const std::span<const double> ko(kernel.offset_moment.data(), n);
  kernels::lattice_convolve(m1.cell_mass(), km, 0, shifted);
  kernels::lattice_convolve(m1.cell_mass(), ko, 0, offset);
  for (std::size_t i = 1; i < n; ++i) {
    mass[i] += shifted[i];
    moment[i] += offset[i] + shifted[i] * out.node(i - 1);
  }

  std::vector<Atom> kept;
  for (const Atom& a : merge_atoms(std::move(atoms), 0.5 * h)) {
    if (a.mass < kTinyAtom) {
      deposit(a.location, a.mass);
    } else {
      kept.push_back(a);
    }
  }
  std::vector<double> centroid(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    centroid[i] = mass[i] > 0.0 ? moment[i] / mass[i] : out.node(i) - 0.5 * h;
  }
  return MixedMeasure(out, std::move(kept), std::move(mass),
                      std::move(centroid));
}

double SampledDensity::operator()(double x) const {
  if (x < 0.0 || x > grid.x_max()) return 0.0;
  const double r = x / grid.h;
  const std::size_t k = static_cast<std::size_t>(r);
  if (k + 1 >= values.size()) return values.back();
  const double fr = r - static_cast<double>(k);
  return values[k] + fr * (values[k + 1] - values[k]);
}

double SampledDensity::trapezoid_mass() const {
  if (values.size() < 2) return 0.0;
  double s = 0.5 * (values.front() + values.back());
  for (std::size_t k = 1; k + 1 < values.size(); ++k) s += values[k];
  return s * grid.h;
}

NonDecreasingFn::NonDecreasingFn(Grid grid, std::vector<double> continuous,
                                 std::vector<Jump> jumps)
    : grid_(grid), cont_(std::move(continuous)) {
  if (cont_.size() != grid_.n) {
    throw InvalidArgument("continuous part must have grid.n entries");
  }
  for (std::size_t k = 1; k < cont_.size(); ++k) {
    if (cont_[k] < cont_[k - 1]) {
      if (cont_[k] < cont_[k - 1] - 1e-12 * (1.0 + std::abs(cont_[k - 1]))) {
        throw InvalidArgument("function must be nondecreasing");
      }
      cont_[k] = cont_[k - 1];
    }
  }
  std::sort(jumps.begin(), jumps.end(), [](const Jump& a, const Jump& b) {
    return a.location < b.location;
  });
  double acc = 0.0;
  for (const Jump& j : jumps) {
    if (!(j.size >= 0.0)) throw InvalidArgument("jump sizes must be >= 0");
    if (j.size == 0.0) continue;
    jumps_.push_back(j);
    acc += j.size;
    jump_cum_.push_back(acc);
  }
}

double NonDecreasingFn::continuous_part(double x) const {
  if (x <= 0.0) return cont_.front();
  if (x >= grid_.x_max()) return cont_.back();
  const double r = x / grid_.h;
  const std::size_t k = static_cast<std::size_t>(r);
  if (k + 1 >= cont_.size()) return cont_.back();
  const double fr = r - static_cast<double>(k);
  return cont_[k] + fr * (cont_[k + 1] - cont_[k]);
}

double NonDecreasingFn::jumps_through(double x) const {
  const double eps = 1e-9 * grid_.h;
  const auto it = std::upper_bound(
      jumps_.begin(), jumps_.end(), x + eps,
      [](double v, const Jump& j) { return v < j.location; });
  const std::size_t n = static_cast<std::size_t>(it - jumps_.begin());
  return n == 0 ? 0.0 : jump_cum_[n - 1];
}

double NonDecreasingFn::jumps_before(double x) const {
  const double eps = 1e-9 * grid_.h;
  const auto it = std::lower_bound(
      jumps_.begin(), jumps_.end(), x - eps,
      [](const Jump& j, double v) { return j.location < v; });
  const std::size_t n = static_cast<std::size_t>(it - jumps_.begin());
  return n == 0 ? 0.0 : jump_cum_[n - 1];
}

double NonDecreasingFn::operator()(double x) const {
  return continuous_part(x) + jumps_through(x);
}

double NonDecreasingFn::left_limit(double x) const {
  return continuous_part(x) + jumps_before(x);
}

double generalized_inverse(const NonDecreasingFn& f, double q) {
  if (!(q >= 0.0)) throw InvalidArgument("inverse argument must be >= 0");
  const Grid& g = f.grid();
  if (q >= f(g.x_max())) {
    throw BeyondRange("generalized inverse beyond computed range; extend the "
                      "horizon");
  }
  if (f(0.0) > q) return 0.0;
  // Smallest node with f(x_k) > q.
  std::size_t lo = 0;
  std::size_t hi = g.n - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (f(g.node(mid)) > q) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double eps = 1e-9 * g.h;
  double a = g.node(lo);
  const double b_end = g.node(hi);
  const double slope = (f.continuous()[hi] - f.continuous()[lo]) / g.h;
  double fa = f(a);
  for (const Jump& j : f.jumps()) {
    if (j.location <= a + eps) continue;
    if (j.location > b_end + eps) break;
    const double b = std::min(j.location, b_end);
    const double fb_left = fa + slope * (b - a);
    if (fb_left > q) return a + (q - fa) / slope;
    if (fb_left + j.size > q) return b;
    a = b;
    fa = fb_left + j.size;
  }
  if (slope <= 0.0) return b_end;
  return std::min(b_end, a + (q - fa) / slope);
}

CdfView cdf_view(const MixedMeasure& m) {
  return CdfView{[&m](double x) { return m.value(x); },
                 [&m](double x) { return m.left_value(x); }, m.breakpoints()};
}

namespace {

// sup_x G2(x) - G1(x + eps) <= eps, checked at every point where the
// difference can peak.
bool dominated(const CdfView& g1, const CdfView& g2, double eps) {
  const double slack = 1e-12;
  for (double b : g2.breakpoints) {
    if (g2.value(b) > g1.value(b + eps) + eps + slack) return false;
    if (g2.left_value(b) > g1.left_value(b + eps) + eps + slack) return false;
  }
  for (double b : g1.breakpoints) {
    const double x = b - eps;
    if (g2.value(x) > g1.value(b) + eps + slack) return false;
    if (g2.left_value(x) > g1.left_value(b) + eps + slack) return false;
  }
  return true;
}

bool within(const CdfView& a, const CdfView& b, double eps) {
  return dominated(a, b, eps) && dominated(b, a, eps);
}

}  // namespace

double levy_distance(const CdfView& a, const CdfView& b) {
  if (within(a, b, 0.0)) return 0.0;
  double hi = 1.0;
  while (!within(a, b, hi)) {
    hi *= 2.0;
    if (hi > 1e12) throw InvalidArgument("Levy distance did not bracket");
  }
  double lo = 0.0;
  for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (within(a, b, mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double levy_distance(const MixedMeasure& a, const MixedMeasure& b) {
  return levy_distance(cdf_view(a), cdf_view(b));
}

}  // namespace renewal_kit
