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
#include <string>
#include <vector>

#include "interax/combinatorics.hpp"
#include "interax/error.hpp"
#include "interax/game.hpp"
#include "interax/player_set.hpp"
#include "interax/subset_transform.hpp"

namespace interax {

// The subsets W ⊆ S in ascending order, paired with (-1)^{|S|-|W|}. Reused
// across many evaluation points of the same derivative.
struct SignedSubsets {
  std::vector<Mask> masks;
  std::vector<double> signs;

  explicit SignedSubsets(Mask s) {
    const int size = popcount(s);
    for_each_subset(s, [&](Mask w) {
      masks.push_back(w);
      signs.push_back(parity_sign(size - popcount(w)));
    });
  }
};

// δ_S v(T) for any callable v(Mask) -> double. No validation; T must be
// disjoint from S.
template <typename ValueFn>
inline double derivative_at(const ValueFn& v, const SignedSubsets& s, Mask t) {
  double d = 0.0;
  for (std::size_t i = 0; i < s.masks.size(); ++i) {
    d += s.signs[i] * v(s.masks[i] | t);
  }
  return d;
}

namespace detail {

inline void check_same_n(const Game& game, const PlayerSet& s,
                         const char* name) {
  if (s.n() != game.n()) {
    throw InvalidArgument(std::string(name) + " is over " +
                          std::to_string(s.n()) + " players, game has " +
                          std::to_string(game.n()));
  }
}

inline void check_disjoint(const PlayerSet& s, const PlayerSet& t) {
  if (s.intersects(t)) {
    throw InvalidArgument("derivative set " + s.to_string() +
                          " overlaps evaluation point " + t.to_string());
  }
}

}  // namespace detail

// δ_S v(T) = sum_{W ⊆ S} (-1)^{|S|-|W|} v(W ∪ T), for S ∩ T = ∅.
inline double discrete_derivative(const Game& game, const PlayerSet& s,
                                  const PlayerSet& t) {
  detail::check_same_n(game, s, "S");
  detail::check_same_n(game, t, "T");
  detail::check_disjoint(s, t);
  if (s.size() > kMaxExactPlayers) {
    throw SizeLimitError("discrete derivative limited to |S| <= 24");
  }
  return derivative_at(game, SignedSubsets(s.bits()), t.bits());
}

// Dense Mobius coefficients a[T] for all T, via the in-place O(n 2^n)
// subset transform.
inline std::vector<double> mobius_coefficients(const Game& game) {
  check_exact_size(game.n(), "Mobius transform");
  const auto table = game.table();
  std::vector<double> a(table.begin(), table.end());
  subset_mobius_inplace(a);
  return a;
}

// a(T) = sum_{S ⊆ T} (-1)^{|T|-|S|} v(S), returned sparsely (exact zeros
// dropped).
inline MobiusExpansion mobius_transform(const Game& game) {
  const auto dense = mobius_coefficients(game);
  MobiusExpansion out;
  out.n = game.n();
  for (std::size_t t = 0; t < dense.size(); ++t) {
    if (dense[t] != 0.0) out.coefficients.emplace(static_cast<Mask>(t), dense[t]);
  }
  return out;
}

struct DerivativeRelation {
  double lhs = 0.0;  // a(T ∪ S)
  double rhs = 0.0;  // sum_{W ⊆ T} (-1)^{|T|-|W|} δ_S v(W)
};

// Both sides of the identity a(T ∪ S) = sum_{W ⊆ T} (-1)^{|T|-|W|} δ_S v(W)
// for disjoint S and T, each evaluated from its own definition.
inline DerivativeRelation mobius_derivative_relation(const Game& game,
                                                     const PlayerSet& s,
                                                     const PlayerSet& t) {
  detail::check_same_n(game, s, "S");
  detail::check_same_n(game, t, "T");
  detail::check_disjoint(s, t);
  if (s.size() + t.size() > kMaxExactPlayers) {
    throw SizeLimitError("Mobius-derivative relation limited to |S ∪ T| <= 24");
  }
  DerivativeRelation rel;
  const SignedSubsets union_subsets(s.bits() | t.bits());
  rel.lhs = derivative_at(game, union_subsets, 0);

  const SignedSubsets ds(s.bits());
  const int tsize = t.size();
  for_each_subset(t.bits(), [&](Mask w) {
    rel.rhs += parity_sign(tsize - popcount(w)) * derivative_at(game, ds, w);
  });
  return rel;
}

}  // namespace interax
