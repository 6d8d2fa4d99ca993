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

#include "interax/axioms.hpp"
#include "oracle.hpp"

namespace interax {
namespace {

TEST(Axioms, AllPassOnRandomGames) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 1 + static_cast<int>(seed % 8);
    const int k = 1 + static_cast<int>(seed % 3 % n);
    const auto g = oracle::random_real_game(n, 4000 + seed);
    const auto checks = check_all_axioms(g, k, seed);
    ASSERT_EQ(checks.size(), 5u);
    for (const auto& c : checks) {
      EXPECT_TRUE(c.passed) << c.name << " n=" << n << " k=" << k << " dev=" << c.max_deviation;
    }
  }
}

TEST(Axioms, NamesAndOrder) {
  const auto checks = check_all_axioms(make_majority(3), 2, 1);
  ASSERT_EQ(checks.size(), 5u);
  EXPECT_EQ(checks[0].name, "efficiency");
  EXPECT_EQ(checks[1].name, "linearity");
  EXPECT_EQ(checks[2].name, "dummy");
  EXPECT_EQ(checks[3].name, "symmetry");
  EXPECT_EQ(checks[4].name, "interaction-distribution");
}

TEST(Axioms, DummyWithNonzeroBaseline) {
  // w(∅) != 0 is shifted away before the dummy is attached.
  const auto w = Game::from_table(2, {5.0, 6.0, 7.0, 3.0});
  for (int pos = 0; pos <= 2; ++pos) {
    EXPECT_TRUE(check_dummy(w, pos, 1.25, 2).passed);
    EXPECT_TRUE(check_dummy(w, pos, -0.5, 3).passed);
  }
}

TEST(Axioms, InteractionDistributionIsExactZero) {
  for (int t = 1; t <= 6; ++t) {
    for (int k = 1; k <= 4; ++k) {
      const auto c = check_interaction_distribution(7, PlayerSet(7, full_mask(t)), 3.5, k);
      EXPECT_TRUE(c.passed);
      EXPECT_EQ(c.max_deviation, 0.0);
    }
  }
}

TEST(Axioms, SymmetryUnderAllRelabellingsOfFour) {
  const auto g = oracle::random_real_game(4, 9);
  std::vector<int> perm{0, 1, 2, 3};
  do {
    EXPECT_TRUE(check_symmetry(g, perm, 2).passed);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(Axioms, Guards) {
  EXPECT_THROW(check_all_axioms(make_majority(25), 1, 0), SizeLimitError);
  EXPECT_THROW(check_all_axioms(make_majority(3), 4, 0), InvalidArgument);
}

}  // namespace
}  // namespace interax
