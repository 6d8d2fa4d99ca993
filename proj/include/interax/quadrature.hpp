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

#include <cmath>
#include <cstdint>

namespace interax {

struct QuadratureResult {
  double value = 0.0;
  std::uint64_t evaluations = 0;
  bool converged = true;
};

namespace detail {

template <typename F>
double simpson_step(const F& f, double a, double fa, double b, double fb,
                    double m, double fm, double whole, double tol, int depth,
                    int min_depth, QuadratureResult& out) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  out.evaluations += 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0) {
    out.converged = false;
    return left + right + delta / 15.0;
  }
  if (min_depth <= 0 && std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1,
                      min_depth - 1, out) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1,
                      min_depth - 1, out);
}

}  // namespace detail

// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance
// `abs_tol`, with Richardson correction. The first `min_depth` levels are
// always subdivided so that integrands vanishing at the coarse nodes are not
// mistaken for converged.
template <typename F>
QuadratureResult adaptive_simpson(const F& f, double a, double b,
                                  double abs_tol, int max_depth = 48,
                                  int min_depth = 4) {
  QuadratureResult out;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  out.evaluations = 3;
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  out.value = detail::simpson_step(f, a, fa, b, fb, m, fm, whole, abs_tol,
                                   max_depth, min_depth, out);
  return out;
}

}  // namespace interax
