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

#include <cmath>
#include <vector>

#include "interax/analysis.hpp"
#include "oracle.hpp"

namespace interax {
namespace {

using oracle::set;

struct FrozenSum {
  int n;
  double nonsingleton;
  double all;
};

// Exact rational sums from an independent brute-force computation over all
// subsets, majority threshold 2|S| >= n.
const std::vector<FrozenSum> kMajoritySums{
    {3, -2, -1},           {4, 1, 2},
    {5, 6, 7},             {6, -9, -8},
    {7, -34, -33},         {8, 143.0 / 3, 146.0 / 3},
    {9, 190, 191},         {10, -293, -292},
    {11, -1154, -1153},    {12, 1849, 1850},
    {13, 7294, 7295},      {14, -60341.0 / 5, -60336.0 / 5},
    {15, -47618, -47617},  {16, 80653, 80654}};

TEST(Analysis, MajoritySweepMatchesFrozenSums) {
  const auto rows = majority_sweep(3, 16);
  ASSERT_EQ(rows.size(), kMajoritySums.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const auto& want = kMajoritySums[i];
    EXPECT_EQ(r.n, want.n);
    const double tol = 1e-9 * std::max(1.0, std::fabs(want.all));
    EXPECT_NEAR(r.sii_sum_nonsingleton, want.nonsingleton, tol) << r.n;
    EXPECT_NEAR(r.sii_sum_all, want.all, tol) << r.n;
    EXPECT_EQ(r.sign, want.nonsingleton > 0 ? '+' : '-');
    ASSERT_TRUE(r.log10_abs.has_value());
    EXPECT_NEAR(*r.log10_abs, std::log10(std::fabs(want.nonsingleton)), 1e-9);
    EXPECT_NEAR(r.stv_pair, 2.0 / (r.n * (r.n - 1)), 1e-12);
    EXPECT_NEAR(r.stv_singleton, 0.0, 1e-12);
  }
}

TEST(Analysis, MajorityThreePlayers) {
  const auto g = make_majority(3);
  const auto sii = sii_all_subsets(g);
  EXPECT_NEAR(sii[0b011], 0.0, 1e-12);
  EXPECT_NEAR(sii[0b101], 0.0, 1e-12);
  EXPECT_NEAR(sii[0b111], -2.0, 1e-12);
  const auto row = majority_row(3);
  EXPECT_TRUE(row.nonsingleton_same_sign);
}

TEST(Analysis, NonsingletonSignsAgreeForOddMajority) {
  for (int n = 3; n <= 11; n += 2) EXPECT_TRUE(majority_row(n).nonsingleton_same_sign) << n;
}

TEST(Analysis, SweepGuardsAndOutput) {
  EXPECT_THROW(majority_sweep(3, 17), SizeLimitError);
  EXPECT_THROW(majority_sweep(5, 4), InvalidArgument);
  const auto csv = sweep_csv(majority_sweep(3, 4));
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "n,sii_sum_all,sii_sum_nonsingleton,sign,log10_abs,nonsingleton_same_sign,"
            "stv_singleton,stv_pair");
  EXPECT_NE(csv.find("\n3,"), std::string::npos);
  const auto script = sweep_gnuplot_script("sweep.csv");
  EXPECT_NE(script.find("sweep.csv"), std::string::npos);
}

TEST(Analysis, ZeroSumUsesSentinel) {
  // n = 1 and n = 2 majority games have no nonzero nonsingleton total.
  const auto row = majority_row(1);
  EXPECT_EQ(row.sign, '0');
  EXPECT_FALSE(row.log10_abs.has_value());
  const auto csv = sweep_csv({row});
  EXPECT_NE(csv.find(",NA,"), std::string::npos);
}

TEST(Analysis, CrossComparison) {
  const auto r = cross_comparison(3.0);
  EXPECT_NEAR(r.linear.sti_singleton, 1.0, 1e-12);
  EXPECT_NEAR(r.linear.sti_pair, 1.0, 1e-12);
  EXPECT_NEAR(r.linear.sti_pair_total, 3.0, 1e-12);
  EXPECT_NEAR(r.linear.sii_pair, 1.5, 1e-12);
  EXPECT_NEAR(r.linear.sii_pair_total, 4.5, 1e-12);
  EXPECT_NEAR(r.linear.sii_main_effect, 0.5, 1e-12);
  ASSERT_EQ(r.product.size(), 8u);
  for (const auto& p : r.product) {
    EXPECT_NEAR(p.sti_pair, 2.0 / (p.n * (p.n - 1)), 1e-12);
    EXPECT_NEAR(p.sti_pair_total, 1.0, 1e-12);
    EXPECT_NEAR(p.sii_pair, 1.0 / (p.n - 1), 1e-12);
    EXPECT_NEAR(p.sii_pair_total, p.n / 2.0, 1e-12);
    EXPECT_NEAR(p.inflation, p.n / 2.0, 1e-12);
  }
  const auto zero = cross_comparison(0.0);
  EXPECT_EQ(zero.linear.sti_pair, 0.0);
  EXPECT_EQ(zero.linear.sii_pair, 0.0);
  EXPECT_NE(cross_comparison_csv(zero).find("linear-crosses,3,0,"), std::string::npos);
}

TEST(Analysis, AggregateIdenticalCopies) {
  const auto g = oracle::random_real_game(5, 31);
  const std::vector<Game> games(10, g);
  const auto ranking = aggregate_crosses(games, 2, Aggregation::kMean);
  const auto single = aggregate_crosses({g}, 2, Aggregation::kMean);
  ASSERT_EQ(ranking.entries.size(), single.entries.size());
  const auto stv = stv_exact(g, 2);
  for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
    EXPECT_EQ(ranking.entries[i].set, single.entries[i].set);
    EXPECT_NEAR(ranking.entries[i].value, stv.at(ranking.entries[i].set), 1e-12);
    EXPECT_EQ(ranking.entries[i].rank, static_cast<int>(i) + 1);
    if (i > 0) { EXPECT_GE(ranking.entries[i - 1].value, ranking.entries[i].value); }
  }
}

TEST(Analysis, AggregateOppositeCrosses) {
  const std::vector<Game> games{make_linear_crosses(3.0), make_linear_crosses(-3.0)};
  const auto mean = aggregate_crosses(games, 2, Aggregation::kMean);
  const auto abs = aggregate_crosses(games, 2, Aggregation::kMeanAbs);
  for (const auto& e : mean.entries)
    if (popcount(e.set) == 2) { EXPECT_NEAR(e.value, 0.0, 1e-12); }
  for (const auto& e : abs.entries)
    if (popcount(e.set) == 2) { EXPECT_NEAR(e.value, 1.0, 1e-12); }
}

TEST(Analysis, AggregateInteractionGameRanksInnerPairsFirst) {
  const auto t = PlayerSet::of(6, {1, 2, 4, 5});
  const auto ranking = aggregate_crosses({make_interaction(6, t, 2.0)}, 2, Aggregation::kMean);
  for (int i = 0; i < 6; ++i) {
    const Mask s = ranking.entries[i].set;
    EXPECT_EQ(popcount(s), 2);
    EXPECT_EQ(s & ~t.bits(), 0u);
  }
  EXPECT_NEAR(ranking.entries[6].value, 0.0, 1e-12);
}

TEST(Analysis, AggregateTiesBreakLexicographically) {
  const auto ranking = aggregate_crosses({make_majority(4)}, 2, Aggregation::kMean);
  // All pairs tie; {0,1} < {0,2} < ... < {2,3}.
  EXPECT_EQ(ranking.entries[0].set, set({0, 1}));
  EXPECT_EQ(ranking.entries[1].set, set({0, 2}));
  EXPECT_EQ(ranking.entries[5].set, set({2, 3}));
  // Singletons tie at zero: {0} < {1} < ...
  EXPECT_EQ(ranking.entries[6].set, set({0}));
}

TEST(Analysis, AggregateEfficiencyAndDeterminism) {
  std::vector<Game> games;
  double span = 0;
  for (int i = 0; i < 6; ++i) {
    games.push_back(oracle::random_real_game(6, 40 + i));
    span += games.back().grand_value() - games.back().empty_value();
  }
  const auto a = aggregate_crosses(games, 3, Aggregation::kMean, std::nullopt, 1);
  const auto b = aggregate_crosses(games, 3, Aggregation::kMean, std::nullopt, 4);
  double total = 0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    total += a.entries[i].value;
    EXPECT_EQ(a.entries[i].set, b.entries[i].set);
    EXPECT_EQ(a.entries[i].value, b.entries[i].value);
  }
  EXPECT_NEAR(total, span / 6, 1e-9);
  EXPECT_EQ(ranking_csv(a), ranking_csv(b));
}

TEST(Analysis, AggregateErrors) {
  EXPECT_THROW(aggregate_crosses({}, 1, Aggregation::kMean), InvalidArgument);
  EXPECT_THROW(aggregate_crosses({make_majority(3), make_majority(4)}, 1, Aggregation::kMean),
               InvalidArgument);
  EXPECT_THROW(aggregate_crosses({make_majority(21)}, 1, Aggregation::kMean), SizeLimitError);
  SamplingPlan plan;
  plan.samples = 50;
  plan.seed = 1;
  plan.targets = {set({0, 1})};
  const auto r = aggregate_crosses({make_majority(21), make_majority(21)}, 2,
                                   Aggregation::kMean, plan);
  EXPECT_EQ(r.entries.size(), 3u);
}

}  // namespace
}  // namespace interax
