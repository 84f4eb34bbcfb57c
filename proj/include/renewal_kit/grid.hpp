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

#ifndef RENEWAL_KIT_GRID_HPP_
#define RENEWAL_KIT_GRID_HPP_

#include <cstddef>
#include <cstdint>

namespace renewal_kit {

// Uniform lattice x_k = k*h, k = 0..n-1. Cell k is (x_{k-1}, x_k].
struct Grid {
  double h = 0.01;
  std::size_t n = 2;

  // n = round(x_max/h) + 1; throws InvalidArgument unless h > 0 and n >= 2.
  static Grid from_step(double h, double x_max);

  double x_max() const { return h * static_cast<double>(n - 1); }
  double node(std::size_t k) const { return h * static_cast<double>(k); }
  bool same_step(const Grid& other) const;
  bool operator==(const Grid& other) const = default;
};

// True when r is within a relative 1e-9 of an integer; stores it in *k.
bool near_integer(double r, std::int64_t* k);

// Index of the cell (x_{k-1}, x_k] containing x; 0 for x <= 0.
std::int64_t cell_index(double x, double h);

// Decomposes a shift c >= 0 as (i0 + fr)*h with fr in [0, 1).
void split_shift(double c, double h, std::int64_t* i0, double* fr);

}  // namespace renewal_kit

#endif  // RENEWAL_KIT_GRID_HPP_
