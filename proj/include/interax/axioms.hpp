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
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "interax/game.hpp"
#include "interax/indices.hpp"
#include "interax/player_set.hpp"

namespace interax {

// Outcome of one executable axiom check.
struct AxiomCheck {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

namespace detail {

inline double max_abs_value(const IndexResult& r) {
  double m = 0.0;
  for (const auto& [s, v] : r.values) m = std::max(m, std::fabs(v));
  return m;
}

}  // namespace detail

// sum_{|S| <= k} I_S(v) = v(N) - v(∅) within 1e-9·max(1, |v(N) - v(∅)|).
inline AxiomCheck check_efficiency(const Game& game, int k,
                                   const ExactOptions& options = {}) {
  const auto r = stv_exact(game, k, options);
  const double span = game.grand_value() - game.empty_value();
  AxiomCheck c;
  c.name = "efficiency";
  c.max_deviation = std::fabs(efficiency_residual(r, game));
  c.tolerance = 1e-9 * std::max(1.0, std::fabs(span));
  c.passed = c.max_deviation <= c.tolerance;
  return c;
}

// I(αv + βw) = αI(v) + βI(w), componentwise.
inline AxiomCheck check_linearity(const Game& v, const Game& w, double alpha,
                                  double beta, int k,
                                  const ExactOptions& options = {}) {
  const auto iv = stv_exact(v, k, options);
  const auto iw = stv_exact(w, k, options);
  const auto icomb = stv_exact(linear_combination(alpha, v, beta, w), k, options);
  AxiomCheck c;
  c.name = "linearity";
  double scale = 1.0;
  for (const auto& [s, value] : icomb.values) {
    const double expected = alpha * iv.at(s) + beta * iw.at(s);
    c.max_deviation = std::max(c.max_deviation, std::fabs(value - expected));
    scale = std::max(scale, std::fabs(expected));
  }
  c.tolerance = 1e-9 * scale;
  c.passed = c.max_deviation <= c.tolerance;
  return c;
}

// Extends w by a dummy player at `position` carrying `weight` (after shifting
// w so that w(∅) = 0, which the dummy definition requires). Checks
// I_{i} = v({i}) and I_S = 0 for every S ∋ i with |S| >= 2.
inline AxiomCheck check_dummy(const Game& w, int position, double weight, int k,
                              const ExactOptions& options = {}) {
  const double base = w.empty_value();
  const Game shifted(w.n(), GameKind::kCustom, w.description(),
                     [w, base](Mask s) { return w(s) - base; });
  const Game v = with_dummy_player(shifted, position, weight);
  const auto r = stv_exact(v, k, options);
  const Mask i = Mask{1} << position;
  AxiomCheck c;
  c.name = "dummy";
  const double scale = std::max(1.0, detail::max_abs_value(r));
  c.max_deviation = std::fabs(r.at(i) - v(i));
  for (const auto& [s, value] : r.values) {
    if ((s & i) != 0 && popcount(s) >= 2) {
      c.max_deviation = std::max(c.max_deviation, std::fabs(value));
    }
  }
  c.tolerance = 1e-10 * scale;
  c.passed = c.max_deviation <= c.tolerance;
  return c;
}

// I_{πS}(πv) = I_S(v) for the relabelling `perm` (perm[i] = new label of i).
inline AxiomCheck check_symmetry(const Game& v, std::span<const int> perm,
                                 int k, const ExactOptions& options = {}) {
  const auto iv = stv_exact(v, k, options);
  const auto ip = stv_exact(permute_players(v, perm), k, options);
  AxiomCheck c;
  c.name = "symmetry";
  for (const auto& [s, value] : iv.values) {
    Mask image = 0;
    for (Mask m = s; m != 0; m &= m - 1) {
      image |= Mask{1} << perm[static_cast<std::size_t>(std::countr_zero(m))];
    }
    c.max_deviation = std::max(c.max_deviation, std::fabs(ip.at(image) - value));
  }
  c.tolerance = 1e-10 * std::max(1.0, detail::max_abs_value(iv));
  c.passed = c.max_deviation <= c.tolerance;
  return c;
}

// For the interaction game v_T with constant c: every S ⊊ T with |S| < k gets
// exactly zero.
inline AxiomCheck check_interaction_distribution(int n, const PlayerSet& t,
                                                 double c_value, int k,
                                                 const ExactOptions& options = {}) {
  const auto r = stv_exact(make_interaction(n, t, c_value), k, options);
  AxiomCheck c;
  c.name = "interaction-distribution";
  for (const auto& [s, value] : r.values) {
    if (popcount(s) < k && (s & ~t.bits()) == 0 && s != t.bits()) {
      c.max_deviation = std::max(c.max_deviation, std::fabs(value));
    }
  }
  c.tolerance = 0.0;
  c.passed = c.max_deviation == 0.0;
  return c;
}

// Runs all five checks against `game`, drawing the auxiliary game,
// coefficients, relabelling, dummy position and interaction set from `seed`.
inline std::vector<AxiomCheck> check_all_axioms(const Game& game, int k,
                                                std::uint64_t seed,
                                                const ExactOptions& options = {}) {
  const int n = game.n();
  check_exact_size(n, "axiom checks");
  detail::check_order(n, k);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  std::vector<AxiomCheck> out;
  out.push_back(check_efficiency(game, k, options));

  std::vector<double> other(std::size_t{1} << n);
  for (double& x : other) x = unit(rng);
  const double alpha = unit(rng), beta = unit(rng);
  out.push_back(check_linearity(game, Game::from_table(n, std::move(other)),
                                alpha, beta, k, options));

  if (n >= 2) {
    // Drop the last player so the dummy-extended game keeps n players.
    const Game reduced = restrict_players(
        game, PlayerSet(n, full_mask(n - 1)), Fill::kBaseline);
    const int position = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    out.push_back(check_dummy(reduced, position, unit(rng), k, options));
  } else {
    out.push_back(check_dummy(make_constant(1, 0.0), 0, unit(rng), 1, options));
  }

  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  out.push_back(check_symmetry(game, perm, k, options));

  Mask t = 0;
  while (t == 0) t = rng() & full_mask(n);
  out.push_back(check_interaction_distribution(n, PlayerSet(n, t), unit(rng) * 10.0,
                                               k, options));
  return out;
}

}  // namespace interax
