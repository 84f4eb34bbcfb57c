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

#include "renewal_kit/transport.hpp"

#include <algorithm>
#include <cmath>

#include "renewal_kit/error.hpp"
#include "renewal_kit/kernels.hpp"

namespace renewal_kit {
namespace {

// Accumulates atoms and (mass, first moment) per cell on the output grid.
class Builder {
 public:
  explicit Builder(Grid g) : g_(g), mass_(g.n, 0.0), moment_(g.n, 0.0) {}

  void atom(double loc, double m) {
    if (m > 0.0) atoms_.push_back({std::max(0.0, loc), m});
  }

  // Point mass at pos > 0; nonpositive positions land in cell 1.
  void point(double pos, double m) {
    if (m == 0.0) return;
    pos = std::max(0.0, pos);
    const std::int64_t idx = std::max<std::int64_t>(1, cell_index(pos, g_.h));
    add_cell(idx, m, m * pos);
  }

  void add_cell(std::int64_t idx, double m, double moment) {
    if (idx < 1 || idx >= static_cast<std::int64_t>(g_.n)) {
      throw InvalidArgument("residual beyond the output grid");
    }
    mass_[static_cast<std::size_t>(idx)] += m;
    moment_[static_cast<std::size_t>(idx)] += moment;
  }

  // Mass w spread uniformly over (lo, hi]; the part at or below 0 is put in
  // cell 1 at the origin.
  void uniform(double lo, double hi, double w) {
    if (w == 0.0) return;
    const double len = hi - lo;
    if (len <= 0.0) {
      point(hi, w);
      return;
    }
    if (lo < 0.0) {
      const double below = std::min(hi, 0.0) - lo;
      add_cell(1, w * below / len, 0.0);
      if (hi <= 0.0) return;
      w *= (hi - 0.0) / len;
      lo = 0.0;
    }
    const double h = g_.h;
    const double span = hi - lo;
    std::int64_t k = std::max<std::int64_t>(1, cell_index(lo, h));
    if (g_.node(static_cast<std::size_t>(k)) <= lo) ++k;
    double a = lo;
    while (a < hi) {
      const double b = std::min(hi, g_.node(static_cast<std::size_t>(k)));
      const double part = w * (b - a) / span;
      add_cell(k, part, part * 0.5 * (a + b));
      a = b;
      ++k;
    }
  }

  std::vector<double>& mass() { return mass_; }
  std::vector<double>& moment() { return moment_; }
  const Grid& grid() const { return g_; }

  MixedMeasure build() {
    std::vector<Atom> kept;
    for (const Atom& a : merge_atoms(std::move(atoms_), 1e-12)) {
      if (a.mass < 1e-15 && a.location > 0.0) {
        point(a.location, a.mass);
      } else {
        kept.push_back(a);
      }
    }
    std::vector<double> centroid(g_.n, 0.0);
    for (std::size_t k = 1; k < g_.n; ++k) {
      centroid[k] = mass_[k] > 0.0 ? moment_[k] / mass_[k]
                                   : g_.node(k) - 0.5 * g_.h;
    }
    return MixedMeasure(g_, std::move(kept), std::move(mass_),
                        std::move(centroid));
  }

 private:
  Grid g_;
  std::vector<double> mass_;
  std::vector<double> moment_;
  std::vector<Atom> atoms_;
};

double tie_eps(double h) { return 1e-6 * h; }

// F at the lattice time tau_K = K h, every renewal at or before tau_K done.
MixedMeasure stieltjes_at(const MixedMeasure& f0, const MixedMeasure& p,
                          const RenewalFunction& a, std::size_t K,
                          const Grid& out) {
  const double h = out.h;
  const double eps = tie_eps(h);
  const double tau = a.grid.node(K);
  Builder b(out);

  for (const Atom& at : f0.atoms()) {
    const double r = at.location - tau;
    if (r > eps) b.atom(r, at.mass);
  }
  const auto& fm = f0.cell_mass();
  const auto& fc = f0.cell_centroid();
  for (std::size_t k = K + 1; k < fm.size(); ++k) {
    if (fm[k] != 0.0) {
      b.add_cell(static_cast<std::int64_t>(k - K), fm[k], fm[k] * (fc[k] - tau));
    }
  }

  const auto& pm = p.cell_mass();
  const auto& pc = p.cell_centroid();
  const auto K64 = static_cast<std::int64_t>(K);
  for (const Atom& s : a.jumps) {
    if (s.location > tau + eps) break;
    for (const Atom& pa : p.atoms()) {
      const double r = s.location + pa.location - tau;
      if (r > eps) b.atom(r, s.mass * pa.mass);
    }
    for (std::size_t k = 1; k < pm.size(); ++k) {
      if (pm[k] == 0.0) continue;
      const double abs_pos = s.location + pc[k];
      const std::int64_t idx =
          std::max<std::int64_t>(1, cell_index(abs_pos, h));
      if (idx > K64) {
        const double w = s.mass * pm[k];
        b.add_cell(idx - K64, w, w * (abs_pos - tau));
      }
    }
  }

  if (K >= 1) {
    const std::size_t n = out.n;
    const ShiftKernel kernel = make_shift_kernel(p, n + K);
    std::span<const double> cells(a.cell_mass.data(), K + 1);
    std::vector<double> shifted(n, 0.0);
    std::vector<double> offset(n, 0.0);
    kernels::lattice_convolve(cells, kernel.mass, K, shifted);
    kernels::lattice_convolve(cells, kernel.offset_moment, K, offset);
    auto& mass = b.mass();
    auto& moment = b.moment();
    for (std::size_t r = 1; r < n; ++r) {
      mass[r] += shifted[r];
      moment[r] += offset[r] + shifted[r] * out.node(r - 1);
    }
  }
  return b.build();
}

// Renewal copies of P started `age` ago, weight w; ties at the origin split
// by theta.
void spawn(const MixedMeasure& p, double age, double w, double theta,
           Builder* b, int depth = 0) {
  if (depth > 10000) throw InvalidArgument("renewal cascade too deep");
  const double eps = tie_eps(b->grid().h);
  for (const Atom& pa : p.atoms()) {
    const double r = pa.location - age;
    const double m = w * pa.mass;
    if (r > eps) {
      b->atom(r, m);
    } else if (r >= -eps) {
      b->atom(0.0, (1.0 - theta) * m);
      if (theta > 0.0) spawn(p, 0.0, theta * m, theta, b, depth + 1);
    } else {
      spawn(p, -r, m, theta, b, depth + 1);
    }
  }
  const auto& pm = p.cell_mass();
  const auto& pc = p.cell_centroid();
  for (std::size_t k = 1; k < pm.size(); ++k) {
    if (pm[k] != 0.0) b->point(pc[k] - age, w * pm[k]);
  }
}

// Advances g by delta in (0, h], cells treated as uniform within the cell.
MixedMeasure evolve(const MixedMeasure& g, const MixedMeasure& p, double delta,
                    double theta) {
  const Grid& out = g.grid();
  const double h = out.h;
  const double eps = tie_eps(h);
  Builder b(out);
  for (const Atom& at : g.atoms()) {
    const double r = at.location - delta;
    if (r > eps) {
      b.atom(r, at.mass);
    } else if (r >= -eps) {
      b.atom(0.0, (1.0 - theta) * at.mass);
      if (theta > 0.0) spawn(p, 0.0, theta * at.mass, theta, &b);
    } else {
      spawn(p, -r, at.mass, theta, &b);
    }
  }
  const double f = std::min(1.0, delta / h);
  const auto& gm = g.cell_mass();
  for (std::size_t k = 2; k < gm.size(); ++k) {
    if (gm[k] == 0.0) continue;
    const double lo = out.node(k - 1);
    const auto k64 = static_cast<std::int64_t>(k);
    const double stay = gm[k] * (1.0 - f);
    const double move = gm[k] * f;
    b.add_cell(k64, stay, stay * (lo + 0.5 * (h - delta)));
    b.add_cell(k64 - 1, move, move * (lo - 0.5 * delta));
  }
  if (gm.size() > 1 && gm[1] != 0.0) {
    const double stay = gm[1] * (1.0 - f);
    b.add_cell(1, stay, stay * 0.5 * (h - delta));
    // The crossing part hits 0 uniformly over the step and restarts with P.
    const double cross = gm[1] * f;
    if (cross > 0.0) {
      for (const Atom& pa : p.atoms()) {
        b.uniform(pa.location - delta, pa.location, cross * pa.mass);
      }
      const auto& pm = p.cell_mass();
      const auto& pc = p.cell_centroid();
      for (std::size_t k = 1; k < pm.size(); ++k) {
        if (pm[k] != 0.0) b.uniform(pc[k] - delta, pc[k], cross * pm[k]);
      }
    }
  }
  return b.build();
}

MixedMeasure regrid(const MixedMeasure& m, const Grid& out) {
  std::vector<double> mass(out.n, 0.0);
  std::vector<double> centroid(out.n, 0.0);
  for (std::size_t k = 1; k < std::min(out.n, m.grid().n); ++k) {
    mass[k] = m.cell_mass()[k];
    centroid[k] = m.cell_centroid()[k];
  }
  return MixedMeasure(out, m.atoms(), std::move(mass), std::move(centroid));
}

MixedMeasure blend(const MixedMeasure& x, const MixedMeasure& y, double t) {
  const Grid& g = x.grid();
  std::vector<Atom> atoms;
  for (const Atom& a : x.atoms()) atoms.push_back({a.location, (1.0 - t) * a.mass});
  for (const Atom& a : y.atoms()) atoms.push_back({a.location, t * a.mass});
  std::vector<double> mass(g.n, 0.0);
  std::vector<double> centroid(g.n, 0.0);
  for (std::size_t k = 1; k < g.n; ++k) {
    const double mx = (1.0 - t) * x.cell_mass()[k];
    const double my = t * y.cell_mass()[k];
    mass[k] = mx + my;
    centroid[k] = mass[k] > 0.0 ? (mx * x.cell_centroid()[k] +
                                   my * y.cell_centroid()[k]) / mass[k]
                                : g.node(k) - 0.5 * g.h;
  }
  return MixedMeasure(g, merge_atoms(std::move(atoms), 1e-12), std::move(mass),
                      std::move(centroid));
}

}  // namespace

double slice_mass(const DensityField& u, std::size_t k) {
  const auto s = u.slice(k);
  double m = 0.5 * (s.front() + s.back());
  for (std::size_t j = 1; j + 1 < s.size(); ++j) m += s[j];
  return m * u.x_grid.h;
}

MixedMeasure slice_measure(const DensityField& u, std::size_t k) {
  return MixedMeasure::from_density_samples(u.x_grid, u.slice(k));
}

DensityField strong_solution(const SampledDensity& u0, const SampledDensity& p,
                             std::span<const double> alpha, const Grid& grid,
                             const Grid& tau_grid) {
  if (!grid.same_step(tau_grid) || !grid.same_step(u0.grid) ||
      !grid.same_step(p.grid)) {
    throw InvalidArgument("strong solution needs dtau = dx = h everywhere");
  }
  const std::size_t nx = grid.n;
  const std::size_t nt = tau_grid.n;
  if (alpha.size() < nt) throw InvalidArgument("alpha shorter than tau grid");
  const std::size_t ext = nx + nt - 1;
  std::vector<double> u0e(ext);
  std::vector<double> pe(ext);
  for (std::size_t i = 0; i < ext; ++i) {
    u0e[i] = u0.at(static_cast<std::int64_t>(i));
    pe[i] = p.at(static_cast<std::int64_t>(i));
  }
  DensityField field{grid, tau_grid, std::vector<double>(nx * nt, 0.0),
                     std::vector<double>(alpha.begin(), alpha.begin() + nt)};
  kernels::strong_solution_slices(u0e, pe, alpha, nx, nt, grid.h, field.values);
  return field;
}

DensityField strong_solution(const DistributionSpec& u0,
                             const DistributionSpec& p, const Grid& grid,
                             const Grid& tau_grid,
                             const TruncationPolicy& policy) {
  const Grid ext = Grid::from_step(grid.h, grid.x_max() + tau_grid.x_max());
  const std::vector<double> alpha = renewal_density(u0, p, tau_grid, policy);
  return strong_solution(sample_density(u0, ext), sample_density(p, ext), alpha,
                         grid, tau_grid);
}

MixedMeasure measure_solution_at_tau(const MixedMeasure& f0,
                                     const MixedMeasure& p,
                                     const RenewalFunction& a, double tau,
                                     double theta) {
  if (!f0.grid().same_step(p.grid()) || !f0.grid().same_step(a.grid)) {
    throw InvalidArgument("inputs need a common grid step");
  }
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw InvalidArgument("jump fraction must lie in [0, 1]");
  }
  const double h = a.grid.h;
  const double eps = tie_eps(h);
  if (!(tau >= -eps) || tau > a.tau_max() + eps) {
    throw BeyondRange("tau outside the computed renewal horizon");
  }
  tau = std::clamp(tau, 0.0, a.tau_max());
  double jump = 0.0;
  for (const Atom& j : a.jumps) {
    if (std::abs(j.location - tau) <= eps) jump += j.mass;
  }
  if (theta != 0.0 && jump == 0.0) {
    throw InvalidArgument("jump fraction given where A does not jump");
  }
  const Grid out = Grid::from_step(
      h, std::max(f0.grid().x_max(), p.grid().x_max()) + h);

  if (tau <= eps) {
    const MixedMeasure before = regrid(f0, out);
    if (jump == 0.0 || theta == 0.0) return before;
    const MixedMeasure after = stieltjes_at(f0, p, a, 0, out);
    return theta == 1.0 ? after : blend(before, after, theta);
  }

  std::int64_t k = 0;
  const bool on_lattice = near_integer(tau / h, &k);
  if (on_lattice && (jump == 0.0 || theta == 1.0)) {
    return stieltjes_at(f0, p, a, static_cast<std::size_t>(k), out);
  }
  std::size_t base;
  double delta;
  if (on_lattice) {
    base = static_cast<std::size_t>(k - 1);
    delta = h;
  } else {
    base = static_cast<std::size_t>(std::floor(tau / h));
    delta = tau - a.grid.node(base);
  }
  return evolve(stieltjes_at(f0, p, a, base, out), p, delta, theta);
}

double pde_residual(const DensityField& u, const SampledDensity& p) {
  const std::size_t nx = u.x_grid.n;
  const std::size_t nt = u.tau_grid.n;
  const double h = u.x_grid.h;
  if (nx < 2 || nt < 2) throw InvalidArgument("field needs two slices");
  if (!p.grid.same_step(u.x_grid)) {
    throw InvalidArgument("density grid step differs from the field");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < nt; ++k) {
    for (std::size_t j = 0; j < nx; ++j) {
      double dt;
      if (k == 0) {
        dt = (u.at(j, 1) - u.at(j, 0)) / h;
      } else if (k + 1 == nt) {
        dt = (u.at(j, k) - u.at(j, k - 1)) / h;
      } else {
        dt = (u.at(j, k + 1) - u.at(j, k - 1)) / (2.0 * h);
      }
      double dx;
      if (j == 0) {
        dx = (u.at(1, k) - u.at(0, k)) / h;
      } else if (j + 1 == nx) {
        dx = (u.at(j, k) - u.at(j - 1, k)) / h;
      } else {
        dx = (u.at(j + 1, k) - u.at(j - 1, k)) / (2.0 * h);
      }
      const double r =
          std::abs(dt - dx - p.at(static_cast<std::int64_t>(j)) * u.trace[k]);
      worst = std::max(worst, r);
    }
  }
  return worst;
}

}  // namespace renewal_kit
