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

#ifndef RENEWAL_KIT_KERNELS_HPP_
#define RENEWAL_KIT_KERNELS_HPP_

#include <cstddef>
#include <span>

// Hot loops. Each kernel has an OpenMP version used by the library and a
// plain serial version kept as the reference for tests and benchmarks.
namespace renewal_kit::kernels {

// out[i] += sum_j a[j] * w[i + offset - j] over in-range indices.
void lattice_convolve(std::span<const double> a, std::span<const double> w,
                      std::size_t offset, std::span<double> out);
void lattice_convolve_serial(std::span<const double> a,
                             std::span<const double> w, std::size_t offset,
                             std::span<double> out);

// Explicit formula on a characteristic-aligned grid:
//   out[k*nx + j] = u0[j+k] + h * trap_{i=0..k} p[j+k-i] * alpha[i]
// u0 and p need at least nx + nt - 1 entries, alpha at least nt.
void strong_solution_slices(std::span<const double> u0,
                            std::span<const double> p,
                            std::span<const double> alpha, std::size_t nx,
                            std::size_t nt, double h, std::span<double> out);
void strong_solution_slices_serial(std::span<const double> u0,
                                   std::span<const double> p,
                                   std::span<const double> alpha,
                                   std::size_t nx, std::size_t nt, double h,
                                   std::span<double> out);

}  // namespace renewal_kit::kernels

#endif  // RENEWAL_KIT_KERNELS_HPP_
