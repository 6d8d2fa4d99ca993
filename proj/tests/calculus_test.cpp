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

#include <gtest/gtest.h>

#include <vector>

#include "interax/calculus.hpp"
#include "interax/subset_transform.hpp"
#include "oracle.hpp"

namespace interax {
namespace {

TEST(Calculus, DerivativeSmallCases) {
  const Game g = Game::from_table(2, {1.0, 3.0, 4.0, 10.0});
  const auto e = PlayerSet::empty(2);
  EXPECT_EQ(discrete_derivative(g, e, e), 1.0);
  EXPECT_EQ(discrete_derivative(g, PlayerSet::of(2, {0}), e), 2.0);
  EXPECT_EQ(discrete_derivative(g, PlayerSet::of(2, {0}), PlayerSet::of(2, {1})), 6.0);
  EXPECT_EQ(discrete_derivative(g, PlayerSet::full(2), e), 10.0 - 3.0 - 4.0 + 1.0);
}

TEST(Calculus, DerivativeMatchesOracle) {
  for (int seed = 0; seed < 20; ++seed) {
    const int n = 2 + seed % 5;
    const auto g = oracle::random_real_game(n, 100 + seed);
    for (Mask s = 0; s <= full_mask(n); ++s) {
      const Mask rest = full_mask(n) & ~s;
      for_each_subset(rest, [&](Mask t) {
        EXPECT_NEAR(discrete_derivative(g, PlayerSet(n, s), PlayerSet(n, t)),
                    static_cast<double>(oracle::derivative(g, s, t)), 1e-12);
      });
    }
  }
}

TEST(Calculus, DerivativeErrors) {
  const auto g = make_majority(4);
  EXPECT_THROW(discrete_derivative(g, PlayerSet::of(4, {0, 1}), PlayerSet::of(4, {1})),
               InvalidArgument);
  EXPECT_THROW(discrete_derivative(g, PlayerSet::of(5, {0}), PlayerSet::empty(4)),
               InvalidArgument);
  const auto big = make_majority(30);
  EXPECT_THROW(discrete_derivative(big, PlayerSet(30, full_mask(25)), PlayerSet::empty(30)),
               SizeLimitError);
  // Large n is fine as long as |S| is small.
  EXPECT_EQ(discrete_derivative(big, PlayerSet::of(30, {0}), PlayerSet(30, full_mask(14) << 1)), 1.0);
}

TEST(Calculus, MobiusMatchesNaive) {
  for (int seed = 0; seed < 10; ++seed) {
    const auto g = oracle::random_real_game(1 + seed % 7, seed);
    const auto fast = mobius_coefficients(g);
    const auto slow = oracle::mobius(g);
    ASSERT_EQ(fast.size(), slow.size());
    for (std::size_t t = 0; t < fast.size(); ++t) EXPECT_NEAR(fast[t], slow[t], 1e-12);
  }
}

TEST(Calculus, MobiusFrozenValues) {
  // From an exact rational computation of the frozen four-player game.
  const std::vector<double> expected{-4, 8, 4, -2, 4, -4, -8, 0, 3, -8, -5, 0, 1, 0, 11, 0};
  EXPECT_EQ(mobius_coefficients(oracle::frozen_game()), expected);
}

TEST(Calculus, MobiusOfBasisGames) {
  const auto e = mobius_transform(make_unanimity(5, PlayerSet::of(5, {1, 3})));
  ASSERT_EQ(e.coefficients.size(), 1u);
  EXPECT_EQ(e.coefficient(0b01010), 1.0);
  const auto m = mobius_transform(make_majority(3));
  EXPECT_EQ(m.coefficient(0b011), 1.0);
  EXPECT_EQ(m.coefficient(0b111), -2.0);
  EXPECT_EQ(m.coefficient(0b001), 0.0);
}

TEST(Calculus, TransformsInvertEachOther) {
  const auto g = oracle::random_real_game(8, 77);
  std::vector<double> x(g.table().begin(), g.table().end());
  subset_mobius_inplace(x);
  subset_zeta_inplace(x);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(x[i], g(i), 1e-12);
  // Superset zeta: y[S] = Σ_{T ⊇ S} x[T].
  std::vector<double> y(g.table().begin(), g.table().end());
  superset_zeta_inplace(y);
  for (Mask s = 0; s < 256; ++s) {
    double acc = 0;
    for (Mask t = 0; t < 256; ++t)
      if ((s & ~t) == 0) acc += g(t);
    EXPECT_NEAR(y[s], acc, 1e-11);
  }
}

TEST(Calculus, MobiusDerivativeRelation) {
  for (int seed = 0; seed < 30; ++seed) {
    const int n = 3 + seed % 5;
    const auto g = oracle::random_real_game(n, 500 + seed);
    const auto a = oracle::mobius(g);
    std::mt19937_64 rng(seed);
    for (int rep = 0; rep < 10; ++rep) {
      const Mask s = rng() & full_mask(n);
      const Mask t = rng() & full_mask(n) & ~s;
      const auto rel = mobius_derivative_relation(g, PlayerSet(n, s), PlayerSet(n, t));
      EXPECT_NEAR(rel.lhs, rel.rhs, 1e-10);
      EXPECT_NEAR(rel.lhs, a[s | t], 1e-10);
    }
  }
}

}  // namespace
}  // namespace interax
