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

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "interax/calculus.hpp"
#include "interax/combinatorics.hpp"
#include "interax/error.hpp"
#include "interax/game.hpp"
#include "interax/player_set.hpp"
#include "interax/quadrature.hpp"

namespace interax {

// A point of the unit hypercube [0,1]^n.
class MultilinearPoint {
 public:
  explicit MultilinearPoint(std::vector<double> x) : x_(std::move(x)) {
    for (std::size_t i = 0; i < x_.size(); ++i) {
      if (!(x_[i] >= 0.0 && x_[i] <= 1.0)) {
        throw InvalidArgument("coordinate x[" + std::to_string(i) +
                              "] outside [0, 1]");
      }
    }
  }

  // The diagonal point (t, ..., t).
  static MultilinearPoint diagonal(int n, double t) {
    return MultilinearPoint(std::vector<double>(static_cast<std::size_t>(n), t));
  }

  // The corner indicating S.
  static MultilinearPoint corner(int n, Mask s) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = ((s >> i) & 1U) ? 1.0 : 0.0;
    return MultilinearPoint(std::move(x));
  }

  std::span<const double> coords() const { return x_; }
  std::size_t size() const { return x_.size(); }
  double operator[](std::size_t i) const { return x_[i]; }

 private:
  std::vector<double> x_;
};

// The multilinear extension f(x) = sum_T a(T) prod_{i ∈ T} x_i of a game,
// holding its dense Mobius coefficients (n <= 24).
class MultilinearExtension {
 public:
  explicit MultilinearExtension(const Game& game)
      : n_(game.n()), a_(mobius_coefficients(game)) {}

  int n() const { return n_; }
  std::span<const double> coefficients() const { return a_; }

  double operator()(const MultilinearPoint& x) const {
    if (static_cast<int>(x.size()) != n_) {
      throw InvalidArgument("point has " + std::to_string(x.size()) +
                            " coordinates, game has " + std::to_string(n_));
    }
    // Fold out the highest player each round: g[m] += x_i g[m | bit i].
    std::vector<double> g(a_);
    for (int i = n_ - 1; i >= 0; --i) {
      const std::size_t half = std::size_t{1} << i;
      const double xi = x[static_cast<std::size_t>(i)];
      for (std::size_t m = 0; m < half; ++m) g[m] += xi * g[m | half];
    }
    return g[0];
  }

  // Coefficients c_d of Δ_S f(t,...,t) = sum_d c_d t^d, where
  // c_d = sum of a(T) over T ⊇ S with |T| = |S| + d.
  std::vector<double> diagonal_partial_polynomial(Mask s) const {
    const Mask rest = full_mask(n_) & ~s;
    std::vector<double> c(static_cast<std::size_t>(popcount(rest)) + 1, 0.0);
    for_each_subset(rest, [&](Mask u) {
      c[static_cast<std::size_t>(popcount(u))] += a_[s | u];
    });
    return c;
  }

  // Δ_S f(t, ..., t) = sum_{T ⊇ S} a(T) t^{|T| - |S|}.
  double mixed_partial_diagonal(Mask s, double t) const {
    const auto c = diagonal_partial_polynomial(s);
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

 private:
  int n_;
  std::vector<double> a_;
};

inline double multilinear_eval(const Game& game, const MultilinearPoint& x) {
  check_exact_size(game.n(), "multilinear extension");
  return MultilinearExtension(game)(x);
}

inline double mixed_partial_diagonal(const Game& game, const PlayerSet& s,
                                     double t) {
  check_exact_size(game.n(), "multilinear extension");
  detail::check_same_n(game, s, "S");
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("t outside [0, 1]");
  return MultilinearExtension(game).mixed_partial_diagonal(s.bits(), t);
}

enum class RemainderMode { kAnalytic, kQuadrature };

namespace detail {

inline void check_remainder_set(const PlayerSet& s, int k) {
  if (s.size() != k) {
    throw InvalidArgument("remainder term needs |S| = k = " + std::to_string(k) +
                          ", got " + s.to_string());
  }
}

// sum_{T ⊇ S} a(T) · k·B(|T|-k+1, k), with k·B(d+1, k) = 1 / C(d+k, k).
inline double remainder_analytic(const MultilinearExtension& f, Mask s, int k) {
  const auto c = f.diagonal_partial_polynomial(s);
  CompensatedSum sum;
  for (std::size_t d = 0; d < c.size(); ++d) {
    sum.add(c[d] / static_cast<double>(binomial(static_cast<int>(d) + k, k)));
  }
  return sum.value();
}

// Sizes-bucketed discrete derivatives D_u = sum_{|U| = u, U ⊆ N\S} δ_S v(U).
// Then Δ_S f(t,...,t) = sum_u D_u t^u (1-t)^{n-|S|-u}, the Bernstein form of
// the diagonal mixed partial, which needs no Mobius coefficients.
inline std::vector<double> bernstein_derivative_weights(std::span<const double> table,
                                                        int n, Mask s) {
  const SignedSubsets ds(s);
  const auto v = [table](Mask m) { return table[m]; };
  const Mask rest = full_mask(n) & ~s;
  std::vector<CompensatedSum> sums(static_cast<std::size_t>(popcount(rest)) + 1);
  for_each_subset(rest, [&](Mask u) {
    sums[static_cast<std::size_t>(popcount(u))].add(derivative_at(v, ds, u));
  });
  std::vector<double> out(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) out[i] = sums[i].value();
  return out;
}

inline double remainder_quadrature(std::span<const double> table, int n, Mask s,
                                   int k) {
  const auto d = bernstein_derivative_weights(table, n, s);
  const int free_players = n - popcount(s);
  const auto integrand = [&](double t) {
    double partial = 0.0;
    for (int u = 0; u <= free_players; ++u) {
      partial += d[static_cast<std::size_t>(u)] * std::pow(t, u) *
                 std::pow(1.0 - t, free_players - u);
    }
    return static_cast<double>(k) * std::pow(1.0 - t, k - 1) * partial;
  };
  const auto q = adaptive_simpson(integrand, 0.0, 1.0, 1e-9);
  if (!q.converged) {
    throw Error("adaptive Simpson did not converge for remainder term");
  }
  return q.value;
}

}  // namespace detail

// The Lagrange remainder term ∫_0^1 k (1-t)^{k-1} Δ_S f(t,...,t) dt for
// |S| = k. Analytic mode sums Mobius coefficients against exact Beta weights;
// quadrature mode integrates the Bernstein form with adaptive Simpson.
inline double lagrange_remainder_term(const Game& game, const PlayerSet& s, int k,
                                      RemainderMode mode) {
  check_exact_size(game.n(), "Lagrange remainder");
  detail::check_same_n(game, s, "S");
  detail::check_remainder_set(s, k);
  if (mode == RemainderMode::kAnalytic) {
    return detail::remainder_analytic(MultilinearExtension(game), s.bits(), k);
  }
  return detail::remainder_quadrature(game.table(), game.n(), s.bits(), k);
}

struct TaylorReport {
  int k = 1;
  double lhs = 0.0;             // v(N) - v(∅)
  double rhs = 0.0;             // Taylor terms + analytic remainders
  double rhs_quadrature = 0.0;  // Taylor terms + quadrature remainders
  std::vector<double> order_terms;  // order_terms[j] = sum_{|S|=j} Δ_S f(0), j < k
  double remainder = 0.0;
  double remainder_quadrature = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  bool quadrature_passed = false;
};

// Checks v(N) - v(∅) = sum_{1<=|S|<k} Δ_S f(0) + sum_{|S|=k} remainder(S)
// within 1e-7·max(1, |lhs|), with the remainders from both modes.
inline TaylorReport taylor_identity_check(const Game& game, int k) {
  const int n = game.n();
  if (n > 20) {
    throw SizeLimitError("Taylor identity check supports at most 20 players, got n = " +
                         std::to_string(n));
  }
  if (k < 1 || k > n) throw InvalidArgument("order k must satisfy 1 <= k <= n");
  const MultilinearExtension f(game);
  const auto table = game.table();
  TaylorReport r;
  r.k = k;
  r.lhs = game.grand_value() - game.empty_value();
  r.order_terms.assign(static_cast<std::size_t>(k), 0.0);
  CompensatedSum taylor;
  for (int j = 1; j < k; ++j) {
    CompensatedSum layer;
    for_each_k_subset(n, j, [&](Mask s) { layer.add(f.mixed_partial_diagonal(s, 0.0)); });
    r.order_terms[static_cast<std::size_t>(j)] = layer.value();
    taylor.add(layer.value());
  }
  CompensatedSum analytic, quadrature;
  for_each_k_subset(n, k, [&](Mask s) {
    analytic.add(detail::remainder_analytic(f, s, k));
    quadrature.add(detail::remainder_quadrature(table, n, s, k));
  });
  r.remainder = analytic.value();
  r.remainder_quadrature = quadrature.value();
  r.rhs = taylor.value() + r.remainder;
  r.rhs_quadrature = taylor.value() + r.remainder_quadrature;
  r.tolerance = 1e-7 * std::max(1.0, std::fabs(r.lhs));
  r.passed = std::fabs(r.lhs - r.rhs) <= r.tolerance;
  r.quadrature_passed = std::fabs(r.lhs - r.rhs_quadrature) <= r.tolerance;
  return r;
}

}  // namespace interax
