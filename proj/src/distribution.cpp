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

#include "renewal_kit/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "renewal_kit/error.hpp"

namespace renewal_kit {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// e^{-rx} sum_{i<k} (rx)^i / i!
double erlang_survival(int k, double rate, double x) {
  if (x <= 0.0) return 1.0;
  const double z = rate * x;
  double term = 1.0;
  double sum = 1.0;
  for (int i = 1; i < k; ++i) {
    term *= z / i;
    sum += term;
  }
  return std::exp(-z) * sum;
}

double erlang_pdf(int k, double rate, double x) {
  if (x < 0.0) return 0.0;
  const double z = rate * x;
  double v = rate * std::exp(-z);
  for (int i = 1; i < k; ++i) v *= z / i;
  return v;
}

// Integrals of y^0, y^1, y^2 times the linear density over [lo, hi] within
// one table segment. Simpson's rule is exact for these cubic integrands.
struct SegmentIntegrals {
  double mass = 0.0;
  double moment = 0.0;
  double second = 0.0;
};

SegmentIntegrals segment(double lo, double hi, double x0, double f0, double x1,
                         double f1) {
  SegmentIntegrals r;
  if (hi <= lo) return r;
  const double slope = (f1 - f0) / (x1 - x0);
  auto f = [&](double y) { return f0 + slope * (y - x0); };
  const double mid = 0.5 * (lo + hi);
  const double w = (hi - lo) / 6.0;
  const double fa = f(lo), fm = f(mid), fb = f(hi);
  r.mass = w * (fa + 4.0 * fm + fb);
  r.moment = w * (lo * fa + 4.0 * mid * fm + hi * fb);
  r.second = w * (lo * lo * fa + 4.0 * mid * mid * fm + hi * hi * fb);
  return r;
}

// Density values per table point after normalisation (pdf) or the constant
// density of each segment (cdf, stored at the left point).
struct TableShape {
  std::vector<double> f_left;
  std::vector<double> f_right;
  double atom = 0.0;
};

TableShape table_shape(const Tabulated& t) {
  TableShape s;
  const std::size_t n = t.x.size();
  s.f_left.resize(n - 1);
  s.f_right.resize(n - 1);
  if (t.kind == Tabulated::Kind::kPdf) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      total += 0.5 * (t.y[i] + t.y[i + 1]) * (t.x[i + 1] - t.x[i]);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      s.f_left[i] = t.y[i] / total;
      s.f_right[i] = t.y[i + 1] / total;
    }
  } else {
    const double last = t.y.back();
    s.atom = t.y.front() / last;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double d = (t.y[i + 1] - t.y[i]) / last / (t.x[i + 1] - t.x[i]);
      s.f_left[i] = d;
      s.f_right[i] = d;
    }
  }
  return s;
}

SegmentIntegrals table_upper(const Tabulated& t, double x) {
  const TableShape s = table_shape(t);
  SegmentIntegrals acc;
  for (std::size_t i = 0; i + 1 < t.x.size(); ++i) {
    const double lo = std::max(x, t.x[i]);
    const SegmentIntegrals seg =
        segment(lo, t.x[i + 1], t.x[i], s.f_left[i], t.x[i + 1], s.f_right[i]);
    acc.mass += seg.mass;
    acc.moment += seg.moment;
    acc.second += seg.second;
  }
  return acc;
}

double table_pdf(const Tabulated& t, double x) {
  const TableShape s = table_shape(t);
  if (x < t.x.front() || x > t.x.back()) return 0.0;
  for (std::size_t i = 0; i + 1 < t.x.size(); ++i) {
    if (x <= t.x[i + 1]) {
      const double fr = (x - t.x[i]) / (t.x[i + 1] - t.x[i]);
      return s.f_left[i] + fr * (s.f_right[i] - s.f_left[i]);
    }
  }
  return 0.0;
}

void collect_atoms(const DistributionSpec& spec, double weight,
                   std::vector<Atom>* out) {
  std::visit(Overloaded{
                 [&](const Dirac& d) { out->push_back({d.c, weight}); },
                 [&](const Mixture& m) {
                   for (std::size_t i = 0; i < m.components.size(); ++i) {
                     collect_atoms(m.components[i], weight * m.weights[i], out);
                   }
                 },
                 [&](const Tabulated& t) {
                   if (t.kind == Tabulated::Kind::kCdf && t.y.front() > 0.0) {
                     out->push_back({t.x.front(), weight * t.y.front() / t.y.back()});
                   }
                 },
                 [](const auto&) {},
             },
             spec.law);
}

}  // namespace

Tabulated load_table(const std::string& path, Tabulated::Kind kind) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read table " + path);
  Tabulated t;
  t.path = path;
  t.kind = kind;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    ls.imbue(std::locale::classic());
    double x = 0.0;
    double y = 0.0;
    if (!(ls >> x >> y)) {
      if (first) {
        first = false;
        continue;
      }
      throw ConfigError("malformed table row in " + path + ": " + line);
    }
    first = false;
    t.x.push_back(x);
    t.y.push_back(y);
  }
  return t;
}

void validate(const DistributionSpec& spec) {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument(std::string(what) + " must be positive");
    }
  };
  std::visit(
      Overloaded{
          [&](const Exponential& e) { positive(e.rate, "exponential rate"); },
          [&](const Uniform& u) {
            if (!(u.a >= 0.0) || !(u.b > u.a) || !std::isfinite(u.b)) {
              throw InvalidArgument("uniform needs 0 <= a < b");
            }
          },
          [&](const Erlang& e) {
            positive(e.rate, "erlang rate");
            if (e.k < 1) throw InvalidArgument("erlang shape must be >= 1");
          },
          [&](const Dirac& d) {
            if (!(d.c >= 0.0) || !std::isfinite(d.c)) {
              throw InvalidArgument("dirac location must be >= 0");
            }
          },
          [&](const Mixture& m) {
            if (m.weights.empty() || m.weights.size() != m.components.size()) {
              throw InvalidArgument("mixture weights and components differ");
            }
            double sum = 0.0;
            for (double w : m.weights) {
              if (!(w >= 0.0)) {
                throw InvalidArgument("mixture weights must be >= 0");
              }
              sum += w;
            }
            if (std::abs(sum - 1.0) > 1e-9) {
              throw InvalidArgument("mixture weights must sum to 1");
            }
            for (const auto& c : m.components) validate(c);
          },
          [&](const Tabulated& t) {
            if (t.x.size() < 2 || t.x.size() != t.y.size()) {
              throw InvalidArgument("table needs at least two rows");
            }
            for (std::size_t i = 0; i < t.x.size(); ++i) {
              if (!(t.x[i] >= 0.0) || !(t.y[i] >= 0.0)) {
                throw InvalidArgument("table entries must be >= 0");
              }
              if (i > 0 && !(t.x[i] > t.x[i - 1])) {
                throw InvalidArgument("table x must be strictly increasing");
              }
              if (i > 0 && t.kind == Tabulated::Kind::kCdf &&
                  t.y[i] < t.y[i - 1]) {
                throw InvalidArgument("table cdf must be nondecreasing");
              }
            }
            if (t.kind == Tabulated::Kind::kCdf &&
                std::abs(t.y.back() - 1.0) > 1e-6) {
              throw InvalidArgument("table cdf must end at 1");
            }
            if (t.kind == Tabulated::Kind::kPdf) {
              double total = 0.0;
              for (std::size_t i = 0; i + 1 < t.x.size(); ++i) {
                total += 0.5 * (t.y[i] + t.y[i + 1]) * (t.x[i + 1] - t.x[i]);
              }
              if (!(total > 0.0)) {
                throw InvalidArgument("table pdf has zero mass");
              }
            }
          },
      },
      spec.law);
}

std::vector<Atom> spec_atoms(const DistributionSpec& spec) {
  std::vector<Atom> out;
  collect_atoms(spec, 1.0, &out);
  return merge_atoms(std::move(out), 0.0);
}

bool has_atoms(const DistributionSpec& spec) {
  return !spec_atoms(spec).empty();
}

double continuous_survival(const DistributionSpec& spec, double x) {
  return std::visit(
      Overloaded{
          [&](const Exponential& e) { return erlang_survival(1, e.rate, x); },
          [&](const Uniform& u) {
            return std::clamp((u.b - x) / (u.b - u.a), 0.0, 1.0);
          },
          [&](const Erlang& e) { return erlang_survival(e.k, e.rate, x); },
          [&](const Dirac&) { return 0.0; },
          [&](const Mixture& m) {
            double s = 0.0;
            for (std::size_t i = 0; i < m.components.size(); ++i) {
              s += m.weights[i] * continuous_survival(m.components[i], x);
            }
            return s;
          },
          [&](const Tabulated& t) { return table_upper(t, x).mass; },
      },
      spec.law);
}

double continuous_upper_moment(const DistributionSpec& spec, double x) {
  return std::visit(
      Overloaded{
          [&](const Exponential& e) {
            return erlang_survival(2, e.rate, x) / e.rate;
          },
          [&](const Uniform& u) {
            const double m = std::clamp(x, u.a, u.b);
            return (u.b * u.b - m * m) / (2.0 * (u.b - u.a));
          },
          [&](const Erlang& e) {
            return e.k / e.rate * erlang_survival(e.k + 1, e.rate, x);
          },
          [&](const Dirac&) { return 0.0; },
          [&](const Mixture& m) {
            double s = 0.0;
            for (std::size_t i = 0; i < m.components.size(); ++i) {
              s += m.weights[i] * continuous_upper_moment(m.components[i], x);
            }
            return s;
          },
          [&](const Tabulated& t) { return table_upper(t, x).moment; },
      },
      spec.law);
}

double spec_cdf(const DistributionSpec& spec, double x) {
  if (x < 0.0) return 0.0;
  double atoms = 0.0;
  for (const Atom& a : spec_atoms(spec)) {
    if (a.location <= x) atoms += a.mass;
  }
  return atoms + continuous_survival(spec, -1.0) -
         continuous_survival(spec, x);
}

double spec_left_cdf(const DistributionSpec& spec, double x) {
  if (x <= 0.0) return 0.0;
  double atoms = 0.0;
  for (const Atom& a : spec_atoms(spec)) {
    if (a.location < x) atoms += a.mass;
  }
  return atoms + continuous_survival(spec, -1.0) -
         continuous_survival(spec, x);
}

double pdf(const DistributionSpec& spec, double x) {
  return std::visit(
      Overloaded{
          [&](const Exponential& e) { return erlang_pdf(1, e.rate, x); },
          [&](const Uniform& u) {
            return (x >= u.a && x <= u.b) ? 1.0 / (u.b - u.a) : 0.0;
          },
          [&](const Erlang& e) { return erlang_pdf(e.k, e.rate, x); },
          [&](const Dirac&) -> double {
            throw InvalidArgument("law has an atom; no density");
          },
          [&](const Mixture& m) {
            double s = 0.0;
            for (std::size_t i = 0; i < m.components.size(); ++i) {
              s += m.weights[i] * pdf(m.components[i], x);
            }
            return s;
          },
          [&](const Tabulated& t) -> double {
            if (t.kind == Tabulated::Kind::kCdf && t.y.front() > 0.0) {
              throw InvalidArgument("law has an atom; no density");
            }
            return table_pdf(t, x);
          },
      },
      spec.law);
}

double spec_mean(const DistributionSpec& spec) {
  return std::visit(
      Overloaded{
          [](const Exponential& e) { return 1.0 / e.rate; },
          [](const Uniform& u) { return 0.5 * (u.a + u.b); },
          [](const Erlang& e) { return e.k / e.rate; },
          [](const Dirac& d) { return d.c; },
          [](const Mixture& m) {
            double s = 0.0;
            for (std::size_t i = 0; i < m.components.size(); ++i) {
              s += m.weights[i] * spec_mean(m.components[i]);
            }
            return s;
          },
          [](const Tabulated& t) {
            const TableShape s = table_shape(t);
            return s.atom * t.x.front() + table_upper(t, -1.0).moment;
          },
      },
      spec.law);
}

double spec_second_moment(const DistributionSpec& spec) {
  return std::visit(
      Overloaded{
          [](const Exponential& e) { return 2.0 / (e.rate * e.rate); },
          [](const Uniform& u) {
            return (u.a * u.a + u.a * u.b + u.b * u.b) / 3.0;
          },
          [](const Erlang& e) { return e.k * (e.k + 1.0) / (e.rate * e.rate); },
          [](const Dirac& d) { return d.c * d.c; },
          [](const Mixture& m) {
            double s = 0.0;
            for (std::size_t i = 0; i < m.components.size(); ++i) {
              s += m.weights[i] * spec_second_moment(m.components[i]);
            }
            return s;
          },
          [](const Tabulated& t) {
            const TableShape s = table_shape(t);
            return s.atom * t.x.front() * t.x.front() +
                   table_upper(t, -1.0).second;
          },
      },
      spec.law);
}

MixedMeasure discretize(const DistributionSpec& spec, const Grid& grid,
                        bool fold_tail) {
  validate(spec);
  std::vector<Atom> atoms = spec_atoms(spec);
  for (const Atom& a : atoms) {
    if (a.location > grid.x_max() + 1e-9 * grid.h) {
      throw InvalidArgument("atom beyond grid x_max");
    }
  }
  const std::size_t n = grid.n;
  std::vector<double> mass(n, 0.0);
  std::vector<double> centroid(n, 0.0);
  double s_prev = continuous_survival(spec, 0.0);
  double m_prev = continuous_upper_moment(spec, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    const double x = grid.node(k);
    const double s = continuous_survival(spec, x);
    const double m = continuous_upper_moment(spec, x);
    double cm = std::max(0.0, s_prev - s);
    double mom = m_prev - m;
    if (fold_tail && k == n - 1) {
      cm += s;
      mom += s * x;
    }
    mass[k] = cm;
    centroid[k] = cm > 1e-300 ? mom / cm : x - 0.5 * grid.h;
    s_prev = s;
    m_prev = m;
  }
  return MixedMeasure(grid, std::move(atoms), std::move(mass),
                      std::move(centroid));
}

SampledDensity sample_density(const DistributionSpec& spec, const Grid& grid) {
  validate(spec);
  if (has_atoms(spec)) throw InvalidArgument("law has an atom; no density");
  SampledDensity d{grid, std::vector<double>(grid.n)};
  for (std::size_t k = 0; k < grid.n; ++k) d.values[k] = pdf(spec, grid.node(k));
  return d;
}

CdfView spec_cdf_view(const DistributionSpec& spec, const Grid& grid) {
  std::vector<double> b;
  for (std::size_t k = 0; k < grid.n; ++k) b.push_back(grid.node(k));
  for (const Atom& a : spec_atoms(spec)) b.push_back(a.location);
  std::sort(b.begin(), b.end());
  return CdfView{[spec](double x) { return spec_cdf(spec, x); },
                 [spec](double x) { return spec_left_cdf(spec, x); },
                 std::move(b)};
}

DistributionSpec exponential(double rate) { return {Exponential{rate}}; }
DistributionSpec uniform(double a, double b) { return {Uniform{a, b}}; }
DistributionSpec erlang(int k, double rate) { return {Erlang{k, rate}}; }
DistributionSpec dirac(double c) { return {Dirac{c}}; }
DistributionSpec mixture(std::vector<double> weights,
                         std::vector<DistributionSpec> components) {
  return {Mixture{std::move(weights), std::move(components)}};
}

}  // namespace renewal_kit
