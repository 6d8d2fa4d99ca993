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

#include <array>
#include <cmath>
#include <cstdint>

#include "interax/error.hpp"

namespace interax {

namespace detail {

struct BinomialTable {
  std::array<std::array<std::uint64_t, 65>, 65> c{};
  constexpr BinomialTable() {
    for (int n = 0; n <= 64; ++n) {
      c[n][0] = 1;
      for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + c[n - 1][k];
    }
  }
};

inline constexpr BinomialTable kBinomials{};

}  // namespace detail

// Exact C(n, k) for 0 <= n <= 64; zero outside 0 <= k <= n.
constexpr std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > 64) throw InvalidArgument("binomial: n out of range");
  if (k < 0 || k > n) return 0;
  return detail::kBinomials.c[n][k];
}

// (-1)^m from parity.
constexpr double parity_sign(int m) { return (m & 1) != 0 ? -1.0 : 1.0; }

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace interax
