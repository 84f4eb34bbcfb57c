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

#include "renewal_kit/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "renewal_kit/config.hpp"
#include "renewal_kit/distribution.hpp"
#include "renewal_kit/error.hpp"
#include "renewal_kit/montecarlo.hpp"
#include "renewal_kit/renewal.hpp"
#include "renewal_kit/rescale.hpp"
#include "renewal_kit/transport.hpp"

namespace renewal_kit {
namespace {

using nlohmann::json;

constexpr const char* kUsage =
    "usage: renewal_kit <command> [options]\n"
    "commands:\n"
    "  solve      strong solution slices u(x, tau) as CSV\n"
    "  renewal    renewal function A and density alpha as CSV\n"
    "  rescale    residual-time laws F_t as JSON\n"
    "  simulate   Monte Carlo (--mode residual|ensemble|mean-renewals)\n"
    "  validate   Laplace, boxed-formula, solution-form and Lorden checks\n"
    "  golden     point-mass example against its closed forms\n";

struct Options {
  std::string config;
  std::string out;
  std::vector<double> t;
  std::vector<double> tau;
  std::vector<double> q;
  std::string mode = "residual";
};

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool pass;
};

void cap_threads() {
  const char* env = std::getenv("RENEWAL_KIT_THREADS");
  if (env == nullptr) return;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end != env && v >= 1 && v < omp_get_max_threads()) {
    omp_set_num_threads(static_cast<int>(v));
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path);
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Grid x_grid(const RunConfig& c) {
  return Grid::from_step(c.grid.h, c.grid.x_max);
}

std::vector<double> pick(const std::vector<double>& flag,
                         const std::vector<double>& config) {
  return flag.empty() ? config : flag;
}

json report_json(const std::vector<Check>& checks) {
  json arr = json::array();
  for (const Check& c : checks) {
    arr.push_back({{"check", c.name},
                   {"value", c.value},
                   {"tolerance", c.tolerance},
                   {"pass", c.pass}});
  }
  return arr;
}

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.pass; });
}

std::string label(const std::string& base, double t, double q) {
  return base + "(t=" + format_number(t) + ",q=" + format_number(q) + ")";
}

int cmd_solve(const RunConfig& c, const Options& o) {
  if (!pick(o.t, c.t_list).empty() && o.tau.empty() && c.tau_list.empty()) {
    throw ConfigError("solve takes tau values, not t");
  }
  if (has_atoms(c.f0) || has_atoms(c.p)) {
    throw ConfigError("solve needs laws with densities");
  }
  std::vector<double> taus = pick(o.tau, c.tau_list);
  if (taus.empty()) {
    for (int k = 0; k <= static_cast<int>(std::floor(c.tau_max)); ++k) {
      taus.push_back(k);
    }
  }
  const double top = *std::max_element(taus.begin(), taus.end());
  const Grid g = x_grid(c);
  const Grid tg = Grid::from_step(c.grid.h, std::max(top, c.grid.h));
  const DensityField u = strong_solution(c.f0, c.p, g, tg);
  std::string out = "x,tau_or_t,value\n";
  for (double tau : taus) {
    const auto k = static_cast<std::size_t>(std::llround(tau / c.grid.h));
    const std::string ts = format_number(tg.node(k));
    for (std::size_t j = 0; j < g.n; ++j) {
      out += format_number(g.node(j)) + "," + ts + "," +
             format_number(u.at(j, k)) + "\n";
    }
  }
  emit(o.out, out);
  return kExitOk;
}

int cmd_renewal(const RunConfig& c, const Options& o) {
  const Grid g = x_grid(c);
  const MixedMeasure f0 = discretize(c.f0, g);
  const MixedMeasure p = discretize(c.p, g);
  const RenewalFunction a = renewal_function(f0, p, c.tau_max);
  const bool densities = !has_atoms(c.f0) && !has_atoms(c.p);
  std::vector<double> alpha;
  if (densities) {
    alpha = renewal_trace(a, sample_density(c.f0, a.grid),
                          sample_density(c.p, a.grid));
  }
  std::string out = densities ? "tau,A,alpha\n" : "tau,A\n";
  for (std::size_t k = 0; k < a.grid.n; ++k) {
    const double tau = a.grid.node(k);
    out += format_number(tau) + "," + format_number(a(tau));
    if (densities) out += "," + format_number(alpha[k]);
    out += "\n";
  }
  emit(o.out, out);
  if (!o.out.empty() && o.out != "-") {
    json jumps = json::array();
    for (const Atom& j : a.jumps) jumps.push_back({j.location, j.mass});
    emit(o.out + ".jumps.json",
         dump({{"jumps", jumps},
               {"series_terms_used", a.series_terms_used},
               {"truncation_residual", a.truncation_residual}}));
  }
  return kExitOk;
}

int cmd_rescale(const RunConfig& c, const Options& o) {
  if (!o.tau.empty() || !c.tau_list.empty()) {
    if (o.t.empty()) throw ConfigError("rescale takes t values, not tau");
  }
  const std::vector<double> ts = pick(o.t, c.t_list);
  if (ts.empty()) throw ConfigError("rescale needs at least one t");
  for (double t : ts) {
    if (!(t >= 0.0)) throw ConfigError("t must be >= 0");
  }
  const Grid g = x_grid(c);
  const MixedMeasure f0 = discretize(c.f0, g);
  const MixedMeasure p = discretize(c.p, g);
  const double t_top = *std::max_element(ts.begin(), ts.end());
  json arr = json::array();
  if (t_top == 0.0) {
    for (double t : ts) {
      arr.push_back({{"t", t}, {"tau", 0.0}, {"measure", measure_to_json(f0)}});
    }
  } else {
    const RescaledClock clock = make_clock(
        f0, p, std::max(c.tau_max, horizon_for(f0, p, t_top)));
    for (double t : ts) {
      const MixedMeasure ft = renewal_scaled_solution(f0, p, clock, t);
      arr.push_back({{"t", t},
                     {"tau", t == 0.0 ? 0.0 : tau_of_t(clock, t)},
                     {"measure", measure_to_json(ft)}});
    }
  }
  emit(o.out, dump(arr));
  return kExitOk;
}

int cmd_simulate(const RunConfig& c, const Options& o) {
  json arr = json::array();
  if (o.mode == "residual" || o.mode == "mean-renewals") {
    const std::vector<double> taus = pick(o.tau, c.tau_list);
    if (taus.empty()) throw ConfigError("simulate --mode " + o.mode + " needs tau");
    for (double tau : taus) {
      if (o.mode == "residual") {
        const EmpiricalMeasure e = simulate_residual(c.f0, c.p, tau, c.n, c.seed);
        arr.push_back({{"tau", tau}, {"n", c.n}, {"seed", c.seed},
                       {"samples", e.samples}});
      } else {
        const MeanEstimate m = mean_renewals(c.f0, c.p, tau, c.n, c.seed);
        arr.push_back({{"tau", tau}, {"n", c.n}, {"seed", c.seed},
                       {"estimate", m.estimate},
                       {"standard_error", m.standard_error}});
      }
    }
  } else if (o.mode == "ensemble") {
    const std::vector<double> ts = pick(o.t, c.t_list);
    if (ts.empty()) throw ConfigError("simulate --mode ensemble needs t");
    for (double t : ts) {
      const EmpiricalMeasure e =
          simulate_rescaled_ensemble(c.f0, c.p, t, c.ensemble_size, c.seed);
      arr.push_back({{"t", t}, {"N", c.ensemble_size}, {"seed", c.seed},
                     {"samples", e.samples}});
    }
  } else {
    throw ConfigError("unknown simulate mode '" + o.mode + "'");
  }
  emit(o.out, dump(arr));
  return kExitOk;
}

int cmd_validate(const RunConfig& c, const Options& o) {
  std::vector<double> qs = o.q.empty() ? std::vector<double>{0.5, 1.0, 2.0} : o.q;
  std::vector<double> ts = pick(o.t, c.t_list);
  if (ts.empty()) ts = {0.25, 0.75, 1.5};
  for (double q : qs) {
    if (!(q > 0.0)) throw ConfigError("q must be > 0");
  }
  const Grid g = x_grid(c);
  const MixedMeasure f0 = discretize(c.f0, g);
  const MixedMeasure p = discretize(c.p, g);
  const double quad_tol = 1e-2 * c.tol;
  double tau_max = c.tau_max;
  for (double t : ts) {
    for (double q : qs) {
      tau_max = std::max(tau_max, measform_horizon(f0, p, t, q, quad_tol));
    }
  }
  const RescaledClock clock = make_clock(f0, p, tau_max);
  const RenewalFunction& a = clock.renewal();
  std::vector<Check> checks;
  for (double q : qs) {
    const double r = laplace_identity_residual(f0, p, a, q);
    checks.push_back({"laplace_identity(q=" + format_number(q) + ")", r, c.tol,
                      r < c.tol});
  }
  for (double t : ts) {
    const MixedMeasure ft = renewal_scaled_solution(f0, p, clock, t);
    const double mass_err = std::abs(total_mass(ft) - 1.0);
    checks.push_back({"total_mass(t=" + format_number(t) + ")", mass_err, 1e-6,
                      mass_err < 1e-6});
    for (double q : qs) {
      const double d =
          std::abs(laplace(ft, q) - measform_rhs(p, clock, t, q, quad_tol));
      checks.push_back({label("boxed_formula", t, q), d, c.tol, d < c.tol});
      const double s = solutionform_residual(f0, p, clock, t, q);
      checks.push_back({label("solution_form", t, q), s, c.tol, s < c.tol});
    }
  }
  double excess = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < a.grid.n; ++k) {
    const double tau = a.grid.node(k);
    excess = std::max(excess, a(tau) - lorden_bound(p, tau));
  }
  checks.push_back({"lorden_audit", excess, 0.0, excess <= 0.0});
  emit(o.out, dump(report_json(checks)));
  return all_pass(checks) ? kExitOk : kExitTolerance;
}

MixedMeasure golden_law(double t, const Grid& g) {
  const double w = std::min(t, 1.0);
  return discretize(mixture({1.0 - w, w}, {dirac(0.0), exponential(1.0)}), g);
}

int cmd_golden(const RunConfig& c, const Options& o) {
  const auto* d = std::get_if<Dirac>(&c.f0.law);
  const auto* e = std::get_if<Exponential>(&c.p.law);
  if (d == nullptr || e == nullptr || d->c != 1.0 || e->rate != 1.0) {
    throw ConfigError("golden needs F0 = dirac{c: 1} and P = exponential{rate: 1}");
  }
  const Grid g = x_grid(c);
  const MixedMeasure f0 = discretize(c.f0, g);
  const MixedMeasure p = discretize(c.p, g);
  const double tau_max = std::max(c.tau_max, measform_horizon(f0, p, 2.0, 0.5, 1e-5));
  const RescaledClock clock = make_clock(f0, p, tau_max);
  const RenewalFunction& a = clock.renewal();
  std::vector<Check> checks;

  double a_err = 0.0;
  for (std::size_t k = 0; k < a.grid.n; ++k) {
    const double tau = a.grid.node(k);
    if (std::abs(tau - 1.0) < 0.5 * a.grid.h) continue;
    a_err = std::max(a_err, std::abs(a(tau) - (tau < 1.0 ? 0.0 : tau)));
  }
  checks.push_back({"A_piecewise", a_err, 1e-6, a_err < 1e-6});

  double clock_err = 0.0;
  for (double t = 0.01; t < std::min(clock.t_max(), 10.0); t += 0.01) {
    clock_err = std::max(clock_err, std::abs(tau_of_t(clock, t) - std::max(1.0, t)));
  }
  checks.push_back({"tau_of_t_piecewise", clock_err, 1e-6, clock_err < 1e-6});

  for (double t : {0.25, 0.5, 0.75, 1.0, 2.0}) {
    const MixedMeasure ft = renewal_scaled_solution(f0, p, clock, t);
    const double l = levy_distance(ft, golden_law(t, ft.grid()));
    checks.push_back({"levy_F_t(t=" + format_number(t) + ")", l, 1e-3, l < 1e-3});
  }
  for (double t : {0.25, 0.75}) {
    for (double q : {0.5, 1.0, 2.0}) {
      const double v = measform_rhs(p, clock, t, q, 1e-5);
      const double err = std::abs(v - (t / (q + 1.0) + 1.0 - t));
      checks.push_back({label("boxed_formula", t, q), err, 1e-3, err < 1e-3});
    }
  }

  json a_samples = json::array();
  for (double tau : {0.0, 0.5, 0.99, 1.0, 1.5, 2.0, 5.0}) {
    a_samples.push_back({tau, a(tau)});
  }
  json clock_samples = json::array();
  for (double t : {0.25, 0.5, 0.75, 1.0, 1.5, 2.0}) {
    clock_samples.push_back({t, tau_of_t(clock, t)});
  }
  const json report = {
      {"checks", report_json(checks)},
      {"A", a_samples},
      {"tau_of_t", clock_samples},
      {"F_0.5", measure_to_json(renewal_scaled_solution(f0, p, clock, 0.5))}};
  emit(o.out, dump(report));
  return all_pass(checks) ? kExitOk : kExitTolerance;
}

RunConfig golden_defaults() {
  RunConfig c;
  c.f0 = dirac(1.0);
  c.p = exponential(1.0);
  return c;
}

}  // namespace

int run_cli(int argc, char** argv) {
  cap_threads();
  static const std::set<std::string> kCommands = {
      "solve", "renewal", "rescale", "simulate", "validate", "golden"};
  if (argc < 2 || kCommands.count(argv[1]) == 0) {
    std::cerr << kUsage;
    return kExitUsage;
  }
  const std::string cmd = argv[1];
  Options o;
  CLI::App app{"renewal_kit " + cmd};
  app.add_option("--config", o.config, "JSON run configuration");
  app.add_option("--out", o.out, "output path (stdout when omitted)");
  app.add_option("--t", o.t, "rescaled times");
  app.add_option("--tau", o.tau, "physical times");
  app.add_option("--q", o.q, "Laplace arguments for validate");
  app.add_option("--mode", o.mode, "simulate mode: residual|ensemble|mean-renewals");
  try {
    app.parse(argc - 1, argv + 1);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    RunConfig c;
    if (o.config.empty()) {
      if (cmd != "golden") throw ConfigError("--config is required");
      c = golden_defaults();
    } else {
      c = load_config(o.config);
    }
    if (o.out.empty()) o.out = c.output;
    if (cmd == "solve") return cmd_solve(c, o);
    if (cmd == "renewal") return cmd_renewal(c, o);
    if (cmd == "rescale") return cmd_rescale(c, o);
    if (cmd == "simulate") return cmd_simulate(c, o);
    if (cmd == "validate") return cmd_validate(c, o);
    return cmd_golden(c, o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace renewal_kit
