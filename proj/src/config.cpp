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

#include "renewal_kit/config.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "renewal_kit/error.hpp"

namespace renewal_kit {
namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) {
    throw ConfigError(std::string("field '") + key + "' must be a number");
  }
  return v.get<double>();
}

std::vector<double> number_list(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) {
    throw ConfigError(std::string("field '") + key + "' must be an array");
  }
  std::vector<double> out;
  for (const json& e : v) {
    if (!e.is_number()) {
      throw ConfigError(std::string("field '") + key + "' must hold numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

DistributionSpec parse_spec(const json& j, const std::string& base_dir) {
  const json& type = field(j, "type");
  if (!type.is_string()) throw ConfigError("distribution type must be a string");
  const std::string t = type.get<std::string>();
  if (t == "exponential") return exponential(number(j, "rate"));
  if (t == "uniform") return uniform(number(j, "a"), number(j, "b"));
  if (t == "erlang") {
    const double k = number(j, "k");
    if (k != std::floor(k)) throw ConfigError("erlang k must be an integer");
    return erlang(static_cast<int>(k), number(j, "rate"));
  }
  if (t == "dirac") return dirac(number(j, "c"));
  if (t == "mixture") {
    std::vector<double> w = number_list(j, "weights");
    const json& comps = field(j, "components");
    if (!comps.is_array()) throw ConfigError("mixture components must be a list");
    std::vector<DistributionSpec> parts;
    for (const json& c : comps) parts.push_back(parse_spec(c, base_dir));
    return mixture(std::move(w), std::move(parts));
  }
  if (t == "tabulated") {
    const json& path = field(j, "path");
    if (!path.is_string()) throw ConfigError("table path must be a string");
    std::string kind = "pdf";
    if (j.contains("kind")) kind = j.at("kind").get<std::string>();
    if (kind != "pdf" && kind != "cdf") {
      throw ConfigError("table kind must be pdf or cdf");
    }
    const std::string rel = path.get<std::string>();
    std::filesystem::path full(rel);
    if (full.is_relative() && !base_dir.empty()) full = base_dir / full;
    Tabulated tab = load_table(
        full.string(), kind == "pdf" ? Tabulated::Kind::kPdf : Tabulated::Kind::kCdf);
    tab.path = rel;
    return DistributionSpec{std::move(tab)};
  }
  throw ConfigError("unknown distribution type '" + t + "'");
}

}  // namespace

DistributionSpec spec_from_json(const json& j, const std::string& base_dir) {
  DistributionSpec spec = parse_spec(j, base_dir);
  try {
    validate(spec);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

json spec_to_json(const DistributionSpec& spec) {
  return std::visit(
      Overloaded{
          [](const Exponential& e) {
            return json{{"type", "exponential"}, {"rate", e.rate}};
          },
          [](const Uniform& u) {
            return json{{"type", "uniform"}, {"a", u.a}, {"b", u.b}};
          },
          [](const Erlang& e) {
            return json{{"type", "erlang"}, {"k", e.k}, {"rate", e.rate}};
          },
          [](const Dirac& d) { return json{{"type", "dirac"}, {"c", d.c}}; },
          [](const Mixture& m) {
            json comps = json::array();
            for (const auto& c : m.components) comps.push_back(spec_to_json(c));
            return json{{"type", "mixture"},
                        {"weights", m.weights},
                        {"components", comps}};
          },
          [](const Tabulated& t) {
            return json{{"type", "tabulated"},
                        {"path", t.path},
                        {"kind", t.kind == Tabulated::Kind::kPdf ? "pdf" : "cdf"}};
          },
      },
      spec.law);
}

RunConfig config_from_json(const json& j, const std::string& base_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  c.f0 = spec_from_json(field(j, "F0"), base_dir);
  c.p = spec_from_json(field(j, "P"), base_dir);
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    if (g.contains("h")) c.grid.h = number(g, "h");
    if (g.contains("x_max")) c.grid.x_max = number(g, "x_max");
  }
  if (j.contains("tau_max")) c.tau_max = number(j, "tau_max");
  if (j.contains("tol")) c.tol = number(j, "tol");
  if (j.contains("t")) c.t_list = number_list(j, "t");
  if (j.contains("tau")) c.tau_list = number_list(j, "tau");
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_unsigned()) throw ConfigError("seed must be a nonnegative integer");
    c.seed = s.get<std::uint64_t>();
  }
  auto count = [&](const char* key, std::size_t* out) {
    if (!j.contains(key)) return;
    const json& v = j.at(key);
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() < 1) {
      throw ConfigError(std::string(key) + " must be a positive integer");
    }
    *out = v.get<std::size_t>();
  };
  count("n", &c.n);
  count("N", &c.ensemble_size);
  if (j.contains("output")) c.output = j.at("output").get<std::string>();

  if (!(c.grid.h > 0.0)) throw ConfigError("grid.h must be > 0");
  if (!(c.grid.x_max > c.grid.h)) throw ConfigError("grid.x_max must exceed h");
  if (!(c.tau_max > 0.0)) throw ConfigError("tau_max must be > 0");
  if (!(c.tol > 0.0)) throw ConfigError("tol must be > 0");
  if (!c.t_list.empty() && !c.tau_list.empty()) {
    throw ConfigError("t and tau lists are mutually exclusive");
  }
  for (double t : c.t_list) {
    if (!(t >= 0.0)) throw ConfigError("t entries must be >= 0");
  }
  for (double t : c.tau_list) {
    if (!(t >= 0.0)) throw ConfigError("tau entries must be >= 0");
  }
  return c;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["F0"] = spec_to_json(c.f0);
  j["P"] = spec_to_json(c.p);
  j["grid"] = {{"h", c.grid.h}, {"x_max", c.grid.x_max}};
  j["tau_max"] = c.tau_max;
  j["tol"] = c.tol;
  if (!c.t_list.empty()) j["t"] = c.t_list;
  if (!c.tau_list.empty()) j["tau"] = c.tau_list;
  j["seed"] = c.seed;
  j["n"] = c.n;
  j["N"] = c.ensemble_size;
  if (!c.output.empty()) j["output"] = c.output;
  return j;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
  const std::string base = std::filesystem::path(path).parent_path().string();
  try {
    return config_from_json(j, base);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config type error: ") + e.what());
  }
}

json measure_to_json(const MixedMeasure& m) {
  json atoms = json::array();
  for (const Atom& a : m.atoms()) atoms.push_back({a.location, a.mass});
  return json{{"atoms", atoms},
              {"density",
               {{"h", m.grid().h},
                {"x_max", m.grid().x_max()},
                {"cell_mass", m.cell_mass()},
                {"cell_centroid", m.cell_centroid()},
                {"values", m.nodal_density()}}}};
}

MixedMeasure measure_from_json(const json& j) {
  try {
    std::vector<Atom> atoms;
    for (const json& a : field(j, "atoms")) {
      atoms.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
    }
    const json& d = field(j, "density");
    const Grid g = Grid::from_step(number(d, "h"), number(d, "x_max"));
    return MixedMeasure(g, std::move(atoms), number_list(d, "cell_mass"),
                        number_list(d, "cell_centroid"));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed measure: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("malformed measure: ") + e.what());
  }
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace renewal_kit
