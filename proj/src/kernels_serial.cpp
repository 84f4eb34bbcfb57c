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

#include <cstdint>

#include "renewal_kit/kernels.hpp"

namespace renewal_kit::kernels {

void lattice_convolve_serial(std::span<const double> a,
                             std::span<const double> w, std::size_t offset,
                             std::span<double> out) {
  const std::int64_t n_out = static_cast<std::int64_t>(out.size());
  const std::int64_t off = static_cast<std::int64_t>(offset);
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] == 0.0) continue;
    for (std::size_t d = 0; d < w.size(); ++d) {
      const std::int64_t i = static_cast<std::int64_t>(j + d) - off;
      if (i < 0) continue;
      if (i >= n_out) break;
      out[static_cast<std::size_t>(i)] += a[j] * w[d];
    }
  }
}

void strong_solution_slices_serial(std::span<const double> u0,
                                   std::span<const double> p,
                                   std::span<const double> alpha,
                                   std::size_t nx, std::size_t nt, double h,
                                   std::span<double> out) {
  for (std::size_t k = 0; k < nt; ++k) {
    for (std::size_t j = 0; j < nx; ++j) {
      double acc = 0.0;
      if (k > 0) {
        acc = 0.5 * (p[j + k] * alpha[0] + p[j] * alpha[k]);
        for (std::size_t i = 1; i < k; ++i) acc += p[j + k - i] * alpha[i];
      }
      out[k * nx + j] = u0[j + k] + h * acc;
    }
  }
}

}  // namespace renewal_kit::kernels
