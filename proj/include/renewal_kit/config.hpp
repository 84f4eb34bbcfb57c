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

#ifndef RENEWAL_KIT_CONFIG_HPP_
#define RENEWAL_KIT_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "renewal_kit/distribution.hpp"
#include "renewal_kit/measure.hpp"

namespace renewal_kit {

struct GridConfig {
  double h = 0.01;
  double x_max = 40.0;
};

struct RunConfig {
  DistributionSpec f0;
  DistributionSpec p;
  GridConfig grid;
  double tau_max = 20.0;
  double tol = 1e-3;
  std::vector<double> t_list;
  std::vector<double> tau_list;
  std::uint64_t seed = 0;
  std::size_t n = 100000;
  std::size_t ensemble_size = 10000;
  std::string output;
};

// Relative table paths resolve against base_dir. Throws ConfigError.
DistributionSpec spec_from_json(const nlohmann::json& j,
                                const std::string& base_dir = "");
nlohmann::json spec_to_json(const DistributionSpec& spec);

RunConfig config_from_json(const nlohmann::json& j,
                           const std::string& base_dir = "");
nlohmann::json config_to_json(const RunConfig& c);
// Throws ConfigError when the file cannot be read or parsed.
RunConfig load_config(const std::string& path);

// {"atoms": [[loc, mass], ...], "density": {h, x_max, cell_mass,
// cell_centroid, values}}; values are nodal density estimates.
nlohmann::json measure_to_json(const MixedMeasure& m);
MixedMeasure measure_from_json(const nlohmann::json& j);

// Shortest round-trip decimal form, independent of the C locale.
std::string format_number(double v);

}  // namespace renewal_kit

#endif  // RENEWAL_KIT_CONFIG_HPP_
