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
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "interax/error.hpp"
#include "interax/player_set.hpp"
#include "interax/subset_transform.hpp"

namespace interax {

enum class GameKind {
  kUnanimity,
  kInteraction,
  kMajority,
  kLinearCrosses,
  kProduct,
  kAdditive,
  kConstant,
  kTabular,
  kMobius,
  kExternal,
  kCustom,
};

inline const char* to_string(GameKind kind) {
  switch (kind) {
    case GameKind::kUnanimity: return "unanimity";
    case GameKind::kInteraction: return "interaction";
    case GameKind::kMajority: return "majority";
    case GameKind::kLinearCrosses: return "linear-crosses";
    case GameKind::kProduct: return "product";
    case GameKind::kAdditive: return "additive";
    case GameKind::kConstant: return "constant";
    case GameKind::kTabular: return "tabular";
    case GameKind::kMobius: return "mobius";
    case GameKind::kExternal: return "external";
    case GameKind::kCustom: return "custom";
  }
  return "unknown";
}

inline void check_exact_size(int n, const char* what) {
  if (n > kMaxExactPlayers) {
    throw SizeLimitError(std::string(what) + " supports at most " +
                         std::to_string(kMaxExactPlayers) +
                         " players, got n = " + std::to_string(n));
  }
}

// A cooperative game v : 2^N -> R on n players.
//
// Game is a cheap value type: copies share one immutable evaluator plus a
// lazily built dense table of all 2^n values (n <= 24). Evaluation is pure;
// the same subset always yields a bit-identical value. Safe to evaluate from
// many threads at once.
class Game {
 public:
  using Evaluator = std::function<double(Mask)>;

  Game(int n, GameKind kind, std::string description, Evaluator evaluator)
      : state_(std::make_shared<State>()) {
    check_player_count(n);
    state_->n = n;
    state_->kind = kind;
    state_->description = std::move(description);
    state_->evaluator = std::move(evaluator);
  }

  // A game whose dense table is already known. `values[mask]` is v(mask).
  static Game from_table(int n, std::vector<double> values,
                         GameKind kind = GameKind::kTabular,
                         std::string description = "tabular") {
    check_player_count(n);
    check_exact_size(n, "dense table");
    if (values.size() != (std::size_t{1} << n)) {
      throw InvalidArgument("length mismatch: expected " +
                            std::to_string(std::size_t{1} << n) +
                            " values for n = " + std::to_string(n) + ", got " +
                            std::to_string(values.size()));
    }
    auto table = std::make_shared<const std::vector<double>>(std::move(values));
    Game g(n, kind, std::move(description),
           [t = table.get()](Mask m) { return (*t)[m]; });
    g.state_->preset_table = std::move(table);
    return g;
  }

  static Game from_function(int n, Evaluator fn,
                            std::string description = "custom") {
    return Game(n, GameKind::kCustom, std::move(description), std::move(fn));
  }

  int n() const { return state_->n; }
  GameKind kind() const { return state_->kind; }
  const std::string& description() const { return state_->description; }

  // Unchecked evaluation on a raw mask; the hot path for index computation.
  double operator()(Mask m) const { return state_->evaluator(m); }

  double value(Mask m) const {
    if ((m & ~full_mask(n())) != 0) {
      throw InvalidArgument("subset has members >= n = " + std::to_string(n()));
    }
    return (*this)(m);
  }
  double value(const PlayerSet& s) const {
    if (s.n() != n()) {
      throw InvalidArgument("player set is over " + std::to_string(s.n()) +
                            " players, game has " + std::to_string(n()));
    }
    return (*this)(s.bits());
  }

  double empty_value() const { return (*this)(0); }
  double grand_value() const { return (*this)(full_mask(n())); }

  // All 2^n values indexed by mask. Built once, on first use, and shared by
  // every copy of this Game.
  std::span<const double> table() const { return *shared_table(); }

  std::shared_ptr<const std::vector<double>> shared_table() const {
    check_exact_size(n(), "dense evaluation");
    std::call_once(state_->table_once, [this] {
      if (state_->preset_table) {
        state_->table = state_->preset_table;
        return;
      }
      const std::size_t size = std::size_t{1} << n();
      std::vector<double> values(size);
      for (std::size_t m = 0; m < size; ++m) values[m] = (*this)(m);
      state_->table = std::make_shared<const std::vector<double>>(std::move(values));
    });
    return state_->table;
  }

 private:
  struct State {
    int n = 1;
    GameKind kind = GameKind::kCustom;
    std::string description;
    Evaluator evaluator;
    std::shared_ptr<const std::vector<double>> preset_table;
    std::once_flag table_once;
    std::shared_ptr<const std::vector<double>> table;
  };

  std::shared_ptr<State> state_;
};

// Sparse coordinates of a game in the unanimity basis: v(S) = sum over
// T ⊆ S of a(T). Absent sets have coefficient zero.
struct MobiusExpansion {
  int n = 1;
  std::map<Mask, double> coefficients;

  double coefficient(Mask t) const {
    const auto it = coefficients.find(t);
    return it == coefficients.end() ? 0.0 : it->second;
  }
};

// ---------------------------------------------------------------------------
// Built-in families.

namespace detail {

inline void check_basis_set(int n, const PlayerSet& t) {
  check_player_count(n);
  if (t.n() != n) {
    throw InvalidArgument("set is over " + std::to_string(t.n()) +
                          " players, expected " + std::to_string(n));
  }
  if (t.is_empty()) {
    throw InvalidArgument("basis set T must be nonempty");
  }
}

}  // namespace detail

// u_T(S) = 1 iff T ⊆ S.
inline Game make_unanimity(int n, const PlayerSet& t) {
  detail::check_basis_set(n, t);
  const Mask tm = t.bits();
  return Game(n, GameKind::kUnanimity, "unanimity " + t.to_string(),
              [tm](Mask s) { return (s & tm) == tm ? 1.0 : 0.0; });
}

// v_T(S) = c iff T ⊆ S, else 0.
inline Game make_interaction(int n, const PlayerSet& t, double c) {
  detail::check_basis_set(n, t);
  const Mask tm = t.bits();
  return Game(n, GameKind::kInteraction, "interaction " + t.to_string(),
              [tm, c](Mask s) { return (s & tm) == tm ? c : 0.0; });
}

// v(S) = 1 iff |S| >= n/2; a tie at even n counts as a majority.
inline Game make_majority(int n) {
  check_player_count(n);
  return Game(n, GameKind::kMajority, "majority n=" + std::to_string(n),
              [n](Mask s) { return 2 * popcount(s) >= n ? 1.0 : 0.0; });
}

// Three players: v(S) = |S| + c·[S = N].
inline Game make_linear_crosses(double c) {
  return Game(3, GameKind::kLinearCrosses, "linear-crosses",
              [c](Mask s) {
                const double base = static_cast<double>(popcount(s));
                return s == 7 ? base + c : base;
              });
}

// v(S) = 1 iff S = N.
inline Game make_product(int n) {
  check_player_count(n);
  const Mask all = full_mask(n);
  return Game(n, GameKind::kProduct, "product n=" + std::to_string(n),
              [all](Mask s) { return s == all ? 1.0 : 0.0; });
}

// v(S) = sum_{i ∈ S} w_i, summed in ascending player order.
inline Game make_additive(std::vector<double> weights) {
  const int n = static_cast<int>(weights.size());
  check_player_count(n);
  return Game(n, GameKind::kAdditive, "additive",
              [w = std::move(weights)](Mask s) {
                double total = 0.0;
                for (Mask m = s; m != 0; m &= m - 1) {
                  total += w[static_cast<std::size_t>(std::countr_zero(m))];
                }
                return total;
              });
}

// v(S) = c for every S, including the empty set.
inline Game make_constant(int n, double c) {
  check_player_count(n);
  return Game(n, GameKind::kConstant, "constant",
              [c](Mask) { return c; });
}

// v(S) = sum_{T ⊆ S} a(T). For n <= 24 values come from a dense subset-sum
// transform built on first use; above that each query sums the sparse terms.
inline Game make_mobius_game(const MobiusExpansion& expansion) {
  const int n = expansion.n;
  check_player_count(n);
  for (const auto& [t, a] : expansion.coefficients) {
    if ((t & ~full_mask(n)) != 0) {
      throw InvalidArgument("Mobius term has members >= n = " +
                            std::to_string(n));
    }
  }
  if (n <= kMaxExactPlayers) {
    std::vector<double> values(std::size_t{1} << n, 0.0);
    for (const auto& [t, a] : expansion.coefficients) values[t] = a;
    subset_zeta_inplace(values);
    return Game::from_table(n, std::move(values), GameKind::kMobius, "mobius");
  }
  std::vector<std::pair<Mask, double>> terms(expansion.coefficients.begin(),
                                             expansion.coefficients.end());
  return Game(n, GameKind::kMobius, "mobius",
              [terms = std::move(terms)](Mask s) {
                double total = 0.0;
                for (const auto& [t, a] : terms) {
                  if ((t & ~s) == 0) total += a;
                }
                return total;
              });
}

// ---------------------------------------------------------------------------
// Game algebra.

// (alpha·v + beta·w)(S).
inline Game linear_combination(double alpha, const Game& v, double beta,
                               const Game& w) {
  if (v.n() != w.n()) {
    throw InvalidArgument("linear combination of games with different n");
  }
  return Game(v.n(), GameKind::kCustom, "linear combination",
              [alpha, beta, v, w](Mask s) { return alpha * v(s) + beta * w(s); });
}

// The relabelled game πv with (πv)(πS) = v(S); `perm[i]` is the new label of
// player i.
inline Game permute_players(const Game& v, std::span<const int> perm) {
  const int n = v.n();
  if (static_cast<int>(perm.size()) != n) {
    throw InvalidArgument("permutation length does not match n");
  }
  std::vector<int> inverse(perm.size(), -1);
  for (int i = 0; i < n; ++i) {
    const int p = perm[static_cast<std::size_t>(i)];
    if (p < 0 || p >= n || inverse[static_cast<std::size_t>(p)] != -1) {
      throw InvalidArgument("not a permutation of the players");
    }
    inverse[static_cast<std::size_t>(p)] = i;
  }
  return Game(n, GameKind::kCustom, "permuted " + v.description(),
              [v, inverse = std::move(inverse)](Mask s) {
                Mask original = 0;
                for (Mask m = s; m != 0; m &= m - 1) {
                  original |= Mask{1} << inverse[static_cast<std::size_t>(
                                  std::countr_zero(m))];
                }
                return v(original);
              });
}

// Inserts a dummy player at index `position` (0..w.n()) into w:
// v(S) = w(S \ {position}) + weight·[position ∈ S], with the players of w
// shifted up by one from `position` on.
inline Game with_dummy_player(const Game& w, int position, double weight) {
  const int n = w.n() + 1;
  check_player_count(n);
  if (position < 0 || position >= n) {
    throw InvalidArgument("dummy position out of range");
  }
  const Mask low = full_mask(position);
  return Game(n, GameKind::kCustom, "dummy-extended " + w.description(),
              [w, position, weight, low](Mask s) {
                const Mask high =
                    position + 1 < 64 ? (s >> (position + 1)) << position : 0;
                const Mask inner = (s & low) | high;
                const double base = w(inner);
                return ((s >> position) & 1U) != 0 ? base + weight : base;
              });
}

}  // namespace interax
