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
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "interax/calculus.hpp"
#include "interax/combinatorics.hpp"
#include "interax/error.hpp"
#include "interax/game.hpp"
#include "interax/parallel.hpp"
#include "interax/player_set.hpp"

namespace interax {

enum class IndexMethod { kShapley, kStv, kSii };

inline const char* to_string(IndexMethod m) {
  switch (m) {
    case IndexMethod::kShapley: return "shapley";
    case IndexMethod::kStv: return "stv";
    case IndexMethod::kSii: return "sii";
  }
  return "unknown";
}

struct IndexMeta {
  bool exact = true;
  std::string mode = "exact";  // exact | oracle | sample | mom
  std::uint64_t samples = 0;
  std::uint64_t groups = 0;
  std::optional<std::uint64_t> seed;
  std::optional<double> range;
  std::string range_provenance;
  std::string convention;
};

// Attribution values keyed by player set, for every S with 1 <= |S| <= k
// (or a declared subset of those for sampled runs).
struct IndexResult {
  IndexMethod method = IndexMethod::kStv;
  int k = 1;
  int n = 1;
  std::map<Mask, double> values;
  IndexMeta meta;

  bool contains(Mask s) const { return values.count(s) != 0; }

  double at(Mask s) const {
    const auto it = values.find(s);
    if (it == values.end()) {
      throw InvalidArgument("no index value for set " +
                            PlayerSet(n, s).to_string());
    }
    return it->second;
  }
  double at(const PlayerSet& s) const { return at(s.bits()); }

  // Entries ordered by set size, then ascending mask.
  std::vector<std::pair<Mask, double>> ordered() const {
    std::vector<std::pair<Mask, double>> out(values.begin(), values.end());
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      const int sa = popcount(a.first), sb = popcount(b.first);
      return sa != sb ? sa < sb : a.first < b.first;
    });
    return out;
  }

  double total() const {
    CompensatedSum sum;
    for (const auto& [s, v] : ordered()) sum.add(v);
    return sum.value();
  }
};

struct ExactOptions {
  int threads = 0;  // <= 0: default_threads()
};

namespace detail {

inline void check_order(int n, int k) {
  if (k < 1 || k > n) {
    throw InvalidArgument("order k must satisfy 1 <= k <= n = " +
                          std::to_string(n) + ", got k = " + std::to_string(k));
  }
}

// (k/n) / C(n-1, t) for t = 0..n-1, from exact integer binomials.
inline std::vector<double> stv_weights(int n, int k) {
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    w[static_cast<std::size_t>(t)] =
        static_cast<double>(k) /
        (static_cast<double>(n) * static_cast<double>(binomial(n - 1, t)));
  }
  return w;
}

// t! (n-t-s)! / (n-s+1)! = 1 / ((n-s+1) C(n-s, t)) for t = 0..n-s.
inline std::vector<double> sii_weights(int n, int s) {
  std::vector<double> w(static_cast<std::size_t>(n - s + 1));
  for (int t = 0; t <= n - s; ++t) {
    w[static_cast<std::size_t>(t)] =
        1.0 / (static_cast<double>(n - s + 1) *
               static_cast<double>(binomial(n - s, t)));
  }
  return w;
}

// sum_{T ⊆ N \ S} weight[|T|] δ_S v(T), T in ascending mask order.
inline double weighted_derivative_sum(std::span<const double> table, int n,
                                      Mask s, std::span<const double> weight) {
  const SignedSubsets ds(s);
  const auto v = [table](Mask m) { return table[m]; };
  CompensatedSum sum;
  for_each_subset(full_mask(n) & ~s, [&](Mask t) {
    sum.add(weight[static_cast<std::size_t>(popcount(t))] *
            derivative_at(v, ds, t));
  });
  return sum.value();
}

inline IndexResult stv_from_table(const Game& game, int k,
                                  const ExactOptions& options,
                                  IndexMethod label) {
  const int n = game.n();
  check_exact_size(n, "exact index computation");
  check_order(n, k);
  const auto table = game.table();
  const auto targets = sets_up_to_order(n, k);
  const auto weights = stv_weights(n, k);
  std::vector<double> out(targets.size());
  parallel_for(targets.size(), options.threads, [&](std::size_t i) {
    const Mask s = targets[i];
    if (popcount(s) < k) {
      out[i] = derivative_at([table](Mask m) { return table[m]; },
                             SignedSubsets(s), 0);
    } else {
      out[i] = weighted_derivative_sum(table, n, s, weights);
    }
  });
  IndexResult r;
  r.method = label;
  r.k = k;
  r.n = n;
  for (std::size_t i = 0; i < targets.size(); ++i) r.values.emplace(targets[i], out[i]);
  return r;
}

}  // namespace detail

// Order-k Shapley-Taylor values from the closed form: δ_S v(∅) for |S| < k
// and (k/n) sum_{T ⊆ N\S} δ_S v(T) / C(n-1, |T|) for |S| = k.
inline IndexResult stv_exact(const Game& game, int k,
                             const ExactOptions& options = {}) {
  return detail::stv_from_table(game, k, options, IndexMethod::kStv);
}

// Shapley values; identical arithmetic to stv_exact(game, 1).
inline IndexResult shapley(const Game& game, const ExactOptions& options = {}) {
  return detail::stv_from_table(game, 1, options, IndexMethod::kShapley);
}

// Shapley-Taylor values as the exact average over all n! orderings of the
// per-ordering values: δ_S v(∅) for |S| < k and δ_S v(π^S) for |S| = k, where
// π^S is the set of players preceding every member of S. Limited to n <= 8.
inline IndexResult stv_permutation_oracle(const Game& game, int k) {
  const int n = game.n();
  if (n > kMaxOraclePlayers) {
    throw SizeLimitError("permutation oracle supports at most 8 players, got n = " +
                         std::to_string(n));
  }
  detail::check_order(n, k);
  const auto table = game.table();
  const auto v = [table](Mask m) { return table[m]; };

  std::vector<Mask> top;
  for_each_k_subset(n, k, [&](Mask s) { top.push_back(s); });
  std::vector<SignedSubsets> top_ds;
  top_ds.reserve(top.size());
  for (Mask s : top) top_ds.emplace_back(s);
  std::vector<CompensatedSum> sums(top.size());

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> position(static_cast<std::size_t>(n));
  std::vector<Mask> prefix(static_cast<std::size_t>(n) + 1);
  std::uint64_t count = 0;
  do {
    prefix[0] = 0;
    for (int j = 0; j < n; ++j) {
      position[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] = j;
      prefix[static_cast<std::size_t>(j) + 1] =
          prefix[static_cast<std::size_t>(j)] |
          (Mask{1} << order[static_cast<std::size_t>(j)]);
    }
    for (std::size_t i = 0; i < top.size(); ++i) {
      int first = n;
      for (Mask m = top[i]; m != 0; m &= m - 1) {
        first = std::min(first, position[static_cast<std::size_t>(std::countr_zero(m))]);
      }
      sums[i].add(derivative_at(v, top_ds[i], prefix[static_cast<std::size_t>(first)]));
    }
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));

  IndexResult r;
  r.method = IndexMethod::kStv;
  r.k = k;
  r.n = n;
  r.meta.mode = "oracle";
  for (int s = 1; s < k; ++s) {
    for_each_k_subset(n, s, [&](Mask m) {
      r.values.emplace(m, derivative_at(v, SignedSubsets(m), 0));
    });
  }
  for (std::size_t i = 0; i < top.size(); ++i) {
    r.values.emplace(top[i], sums[i].value() / static_cast<double>(count));
  }
  return r;
}

// Shapley interaction index of one set:
// sum_{T ⊆ N\S} (n-t-s)! t! / (n-s+1)! · δ_S v(T).
inline double sii_exact(const Game& game, const PlayerSet& s) {
  const int n = game.n();
  check_exact_size(n, "exact interaction index");
  detail::check_same_n(game, s, "S");
  if (s.is_empty()) throw InvalidArgument("interaction set S must be nonempty");
  const auto weights = detail::sii_weights(n, s.size());
  return detail::weighted_derivative_sum(game.table(), n, s.bits(), weights);
}

// Shapley interaction indices for every S with 1 <= |S| <= k.
inline IndexResult sii_index(const Game& game, int k,
                             const ExactOptions& options = {}) {
  const int n = game.n();
  check_exact_size(n, "exact interaction index");
  detail::check_order(n, k);
  const auto table = game.table();
  const auto targets = sets_up_to_order(n, k);
  std::vector<std::vector<double>> weights(static_cast<std::size_t>(k) + 1);
  for (int s = 1; s <= k; ++s) weights[static_cast<std::size_t>(s)] = detail::sii_weights(n, s);
  std::vector<double> out(targets.size());
  parallel_for(targets.size(), options.threads, [&](std::size_t i) {
    const Mask s = targets[i];
    out[i] = detail::weighted_derivative_sum(
        table, n, s, weights[static_cast<std::size_t>(popcount(s))]);
  });
  IndexResult r;
  r.method = IndexMethod::kSii;
  r.k = k;
  r.n = n;
  for (std::size_t i = 0; i < targets.size(); ++i) r.values.emplace(targets[i], out[i]);
  return r;
}

// Shapley interaction indices of all 2^n sets at once, from the Mobius
// coefficients: I(S) = sum_{T ⊇ S} a(T) / (|T| - |S| + 1). Runs one superset
// transform per cardinality layer, O(n^2 2^n).
inline std::vector<double> sii_all_subsets(const Game& game) {
  const int n = game.n();
  check_exact_size(n, "exact interaction index");
  const auto a = mobius_coefficients(game);
  const std::size_t size = a.size();
  std::vector<double> out(size, 0.0);
  std::vector<double> layer(size);
  for (int j = 0; j <= n; ++j) {
    for (std::size_t t = 0; t < size; ++t) {
      layer[t] = popcount(t) == j ? a[t] : 0.0;
    }
    superset_zeta_inplace(layer);
    for (std::size_t s = 0; s < size; ++s) {
      const int ssize = popcount(s);
      if (ssize <= j) out[s] += layer[s] / static_cast<double>(j - ssize + 1);
    }
  }
  return out;
}

// Order-2 Shapley interaction values with main effects defined by the
// convention Φ_ii = Φ_i - ½ sum_{j≠i} Φ_ij, where Φ_i is the Shapley value.
// This is a convention layered on top of the interaction index, which does
// not itself define main effects; with it, main effects plus pairs sum to
// v(N) - v(∅).
inline IndexResult sii_main_effects(const Game& game,
                                    const ExactOptions& options = {}) {
  const int n = game.n();
  check_exact_size(n, "exact interaction index");
  const auto phi = shapley(game, options);
  IndexResult r;
  r.method = IndexMethod::kSii;
  r.k = std::min(2, n);
  r.n = n;
  r.meta.convention = "main effect = Shapley value - 1/2 sum of pairwise SII";
  if (n == 1) {
    r.values = phi.values;
    return r;
  }
  const auto pairs = sii_index(game, 2, options);
  for (int i = 0; i < n; ++i) {
    const Mask si = Mask{1} << i;
    CompensatedSum half;
    for (int j = 0; j < n; ++j) {
      if (j != i) half.add(pairs.at(si | (Mask{1} << j)));
    }
    r.values.emplace(si, phi.at(si) - 0.5 * half.value());
  }
  for (const auto& [s, value] : pairs.values) {
    if (popcount(s) == 2) r.values.emplace(s, value);
  }
  return r;
}

// sum_S result[S] - (v(N) - v(∅)).
inline double efficiency_residual(const IndexResult& result, const Game& game) {
  if (result.n != game.n()) {
    throw InvalidArgument("index result and game have different n");
  }
  return result.total() - (game.grand_value() - game.empty_value());
}

enum class Fill { kBaseline, kGrand };

inline const char* to_string(Fill f) {
  return f == Fill::kBaseline ? "baseline" : "grand";
}

// The game induced on the players in `keep`, renumbered 0..|keep|-1 in
// ascending order. Excluded players are held absent (baseline) or present
// (grand).
inline Game restrict_players(const Game& game, const PlayerSet& keep,
                             Fill fill) {
  detail::check_same_n(game, keep, "keep");
  if (keep.is_empty()) throw InvalidArgument("keep set must be nonempty");
  const std::vector<int> members = keep.players();
  const Mask fixed =
      fill == Fill::kGrand ? (full_mask(game.n()) & ~keep.bits()) : Mask{0};
  const int m = static_cast<int>(members.size());
  return Game(m, GameKind::kCustom,
              "restricted " + keep.to_string() + " (" + to_string(fill) + ") of " +
                  game.description(),
              [game, members, fixed](Mask s) {
                Mask original = fixed;
                for (Mask b = s; b != 0; b &= b - 1) {
                  original |= Mask{1} << members[static_cast<std::size_t>(
                                  std::countr_zero(b))];
                }
                return game(original);
              });
}

}  // namespace interax
