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

#include "renewal_kit/grid.hpp"

#include <algorithm>
#include <cmath>

#include "renewal_kit/error.hpp"

namespace renewal_kit {

Grid Grid::from_step(double h, double x_max) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw InvalidArgument("grid step must be positive and finite");
  }
  if (!(x_max > 0.0) || !std::isfinite(x_max)) {
    throw InvalidArgument("grid x_max must be positive and finite");
  }
  const double r = x_max / h;
  std::int64_t k = 0;
  if (!near_integer(r, &k)) k = static_cast<std::int64_t>(std::ceil(r));
  if (k < 1) throw InvalidArgument("grid needs at least two nodes");
  return Grid{h, static_cast<std::size_t>(k + 1)};
}

bool Grid::same_step(const Grid& other) const {
  return std::abs(h - other.h) <= 1e-12 * h;
}

bool near_integer(double r, std::int64_t* k) {
  const double nearest = std::nearbyint(r);
  if (std::abs(r - nearest) <= 1e-9 * std::max(1.0, std::abs(r))) {
    *k = static_cast<std::int64_t>(nearest);
    return true;
  }
  return false;
}

std::int64_t cell_index(double x, double h) {
  if (x <= 0.0) return 0;
  const double r = x / h;
  std::int64_t k = 0;
  if (near_integer(r, &k)) return k;
  return static_cast<std::int64_t>(std::ceil(r));
}

void split_shift(double c, double h, std::int64_t* i0, double* fr) {
  const double r = c / h;
  std::int64_t k = 0;
  if (near_integer(r, &k)) {
    *i0 = k;
    *fr = 0.0;
    return;
  }
  const double fl = std::floor(r);
  *i0 = static_cast<std::int64_t>(fl);
  *fr = r - fl;
}

}  // namespace renewal_kit
