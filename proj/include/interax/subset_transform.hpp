// Copyright 2026 The Interax Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>

#include "interax/player_set.hpp"

namespace interax {

// In-place subset-sum (zeta) transform over the lattice of subsets:
// out[S] = sum_{T ⊆ S} in[T]. `values.size()` must be a power of two.
inline void subset_zeta_inplace(std::span<double> values) {
  const std::size_t size = values.size();
  for (std::size_t bit = 1; bit < size; bit <<= 1) {
    for (std::size_t m = 0; m < size; ++m) {
      if ((m & bit) != 0) values[m] += values[m ^ bit];
    }
  }
}

// Inverse of subset_zeta_inplace:
// out[T] = sum_{S ⊆ T} (-1)^{|T|-|S|} in[S].
inline void subset_mobius_inplace(std::span<double> values) {
  const std::size_t size = values.size();
  for (std::size_t bit = 1; bit < size; bit <<= 1) {
    for (std::size_t m = 0; m < size; ++m) {
      if ((m & bit) != 0) values[m] -= values[m ^ bit];
    }
  }
}

// out[S] = sum_{T ⊇ S} in[T].
inline void superset_zeta_inplace(std::span<double> values) {
  const std::size_t size = values.size();
  for (std::size_t bit = 1; bit < size; bit <<= 1) {
    for (std::size_t m = 0; m < size; ++m) {
      if ((m & bit) == 0) values[m] += values[m | bit];
    }
  }
}

}  // namespace interax
