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

#include <algorithm>
#include <cstdint>

#include "renewal_kit/kernels.hpp"

namespace renewal_kit::kernels {
namespace {

// First and one-past-last nonzero index.
void support(std::span<const double> v, std::int64_t* lo, std::int64_t* hi) {
  std::int64_t a = 0;
  std::int64_t b = static_cast<std::int64_t>(v.size());
  while (a < b && v[static_cast<std::size_t>(a)] == 0.0) ++a;
  while (b > a && v[static_cast<std::size_t>(b - 1)] == 0.0) --b;
  *lo = a;
  *hi = b;
}

}  // namespace

void lattice_convolve(std::span<const double> a, std::span<const double> w,
                      std::size_t offset, std::span<double> out) {
  std::int64_t a0, a1, w0, w1;
  support(a, &a0, &a1);
  support(w, &w0, &w1);
  if (a0 == a1 || w0 == w1) return;
  const std::int64_t n_out = static_cast<std::int64_t>(out.size());
  const std::int64_t off = static_cast<std::int64_t>(offset);
  const double* pa = a.data();
  const double* pw = w.data();
  double* po = out.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n_out; ++i) {
    const std::int64_t s = i + off;
    const std::int64_t jlo = std::max(a0, s - (w1 - 1));
    const std::int64_t jhi = std::min(a1 - 1, s - w0);
    double acc = 0.0;
    for (std::int64_t j = jlo; j <= jhi; ++j) acc += pa[j] * pw[s - j];
    po[i] += acc;
  }
}

void strong_solution_slices(std::span<const double> u0,
                            std::span<const double> p,
                            std::span<const double> alpha, std::size_t nx,
                            std::size_t nt, double h, std::span<double> out) {
  const std::int64_t nxs = static_cast<std::int64_t>(nx);
  const std::int64_t nts = static_cast<std::int64_t>(nt);
  const double* pu = u0.data();
  const double* pp = p.data();
  const double* pa = alpha.data();
  double* po = out.data();
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t k = 0; k < nts; ++k) {
    for (std::int64_t j = 0; j < nxs; ++j) {
      double acc = 0.0;
      if (k > 0) {
        acc = 0.5 * (pp[j + k] * pa[0] + pp[j] * pa[k]);
        for (std::int64_t i = 1; i < k; ++i) acc += pp[j + k - i] * pa[i];
      }
      po[k * nxs + j] = pu[j + k] + h * acc;
    }
  }
}

}  // namespace renewal_kit::kernels
