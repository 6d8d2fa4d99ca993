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
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "interax/error.hpp"
#include "interax/game.hpp"
#include "interax/indices.hpp"
#include "interax/parallel.hpp"
#include "interax/player_set.hpp"
#include "interax/sampling.hpp"

namespace interax {

// One point of the majority-game divergence sweep: sums of the Shapley
// interaction index over all nonempty subsets, and over subsets of size >= 2.
struct MajoritySweepRow {
  int n = 0;
  double sii_sum_all = 0.0;
  double sii_sum_nonsingleton = 0.0;
  char sign = '0';                  // sign of sii_sum_nonsingleton
  std::optional<double> log10_abs;  // absent when the sum is zero
  bool nonsingleton_same_sign = true;  // no two nonzero |S| >= 2 values differ in sign
  double stv_singleton = 0.0;       // order-2 Shapley-Taylor value of {0}
  double stv_pair = 0.0;            // order-2 Shapley-Taylor value of {0,1}
};

inline constexpr int kMaxSweepPlayers = 16;

inline MajoritySweepRow majority_row(int n, const ExactOptions& options = {}) {
  const Game game = make_majority(n);
  const auto sii = sii_all_subsets(game);
  MajoritySweepRow row;
  row.n = n;
  CompensatedSum all, nonsingleton;
  bool seen_pos = false, seen_neg = false;
  for (std::size_t s = 1; s < sii.size(); ++s) {
    all.add(sii[s]);
    if (popcount(s) >= 2) {
      nonsingleton.add(sii[s]);
      // Values within rounding of zero count as zero.
      if (sii[s] > 1e-9) seen_pos = true;
      if (sii[s] < -1e-9) seen_neg = true;
    }
  }
  row.sii_sum_all = all.value();
  row.sii_sum_nonsingleton = nonsingleton.value();
  row.nonsingleton_same_sign = !(seen_pos && seen_neg);
  const double mag = std::fabs(row.sii_sum_nonsingleton);
  if (mag > 1e-9) {
    row.sign = row.sii_sum_nonsingleton > 0 ? '+' : '-';
    row.log10_abs = std::log10(mag);
  }
  if (n >= 2) {
    const auto stv = stv_exact(game, 2, options);
    row.stv_singleton = stv.at(Mask{1});
    row.stv_pair = stv.at(Mask{3});
  }
  return row;
}

// Majority games for n = n_min..n_max (n_max <= 16).
inline std::vector<MajoritySweepRow> majority_sweep(int n_min, int n_max,
                                                    const ExactOptions& options = {}) {
  if (n_min < 1 || n_min > n_max) {
    throw InvalidArgument("majority sweep needs 1 <= n_min <= n_max");
  }
  if (n_max > kMaxSweepPlayers) {
    throw SizeLimitError("majority sweep supports n_max <= 16, got " +
                         std::to_string(n_max));
  }
  std::vector<MajoritySweepRow> rows;
  for (int n = n_min; n <= n_max; ++n) rows.push_back(majority_row(n, options));
  return rows;
}

inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string sweep_csv(const std::vector<MajoritySweepRow>& rows) {
  std::ostringstream out;
  out << "n,sii_sum_all,sii_sum_nonsingleton,sign,log10_abs,"
         "nonsingleton_same_sign,stv_singleton,stv_pair\n";
  for (const auto& r : rows) {
    out << r.n << ',' << format_real(r.sii_sum_all) << ','
        << format_real(r.sii_sum_nonsingleton) << ',' << r.sign << ','
        << (r.log10_abs ? format_real(*r.log10_abs) : std::string("NA")) << ','
        << (r.nonsingleton_same_sign ? "true" : "false") << ','
        << format_real(r.stv_singleton) << ',' << format_real(r.stv_pair) << '\n';
  }
  return out.str();
}

// A gnuplot script plotting sign·log10|sum| against n from a sweep CSV.
inline std::string sweep_gnuplot_script(const std::string& csv_path) {
  std::ostringstream out;
  out << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set xlabel 'number of players'\n"
      << "set ylabel 'sign * log10 |sum of SII over |S|>=2|'\n"
      << "set grid\n"
      << "plot '" << csv_path << "' using 1:((stringcolumn(4) eq '-' ? -1 : 1) * "
      << "(stringcolumn(5) eq 'NA' ? 0 : $5)) with linespoints title 'majority'\n";
  return out.str();
}

struct LinearCrossRow {
  double c = 0.0;
  double sti_singleton = 0.0;
  double sti_pair = 0.0;
  double sti_pair_total = 0.0;
  double sii_pair = 0.0;
  double sii_pair_total = 0.0;
  double sii_main_effect = 0.0;
};

struct ProductRow {
  int n = 0;
  double sti_pair = 0.0;
  double sti_pair_total = 0.0;
  double sii_pair = 0.0;
  double sii_pair_total = 0.0;
  double inflation = 0.0;  // sii_pair_total / sti_pair_total
};

struct CrossComparison {
  LinearCrossRow linear;
  std::vector<ProductRow> product;
};

namespace detail {

inline double pair_total(const IndexResult& r) {
  CompensatedSum sum;
  for (const auto& [s, v] : r.ordered()) {
    if (popcount(s) == 2) sum.add(v);
  }
  return sum.value();
}

}  // namespace detail

// Order-2 Shapley-Taylor vs Shapley interaction values on the three-player
// linear model with a cross of strength c, and on product games n = 3..10.
inline CrossComparison cross_comparison(double c, int product_n_min = 3,
                                        int product_n_max = 10) {
  CrossComparison out;
  const Game lin = make_linear_crosses(c);
  const auto sti = stv_exact(lin, 2);
  const auto sii = sii_main_effects(lin);
  out.linear.c = c;
  out.linear.sti_singleton = sti.at(Mask{1});
  out.linear.sti_pair = sti.at(Mask{3});
  out.linear.sti_pair_total = detail::pair_total(sti);
  out.linear.sii_pair = sii.at(Mask{3});
  out.linear.sii_pair_total = detail::pair_total(sii);
  out.linear.sii_main_effect = sii.at(Mask{1});
  for (int n = product_n_min; n <= product_n_max; ++n) {
    const Game prod = make_product(n);
    const auto ps = stv_exact(prod, 2);
    const auto pi = sii_index(prod, 2);
    ProductRow row;
    row.n = n;
    row.sti_pair = ps.at(Mask{3});
    row.sti_pair_total = detail::pair_total(ps);
    row.sii_pair = pi.at(Mask{3});
    row.sii_pair_total = detail::pair_total(pi);
    row.inflation = row.sii_pair_total / row.sti_pair_total;
    out.product.push_back(row);
  }
  return out;
}

inline std::string cross_comparison_csv(const CrossComparison& r) {
  std::ostringstream out;
  out << "model,n,c,sti_singleton,sti_pair,sti_pair_total,sii_main_effect,"
         "sii_pair,sii_pair_total,inflation\n";
  const auto& l = r.linear;
  out << "linear-crosses,3," << format_real(l.c) << ',' << format_real(l.sti_singleton)
      << ',' << format_real(l.sti_pair) << ',' << format_real(l.sti_pair_total) << ','
      << format_real(l.sii_main_effect) << ',' << format_real(l.sii_pair) << ','
      << format_real(l.sii_pair_total) << ','
      << (l.sti_pair_total != 0.0 ? format_real(l.sii_pair_total / l.sti_pair_total)
                                  : std::string("NA"))
      << '\n';
  for (const auto& p : r.product) {
    out << "product," << p.n << ",NA,0," << format_real(p.sti_pair) << ','
        << format_real(p.sti_pair_total) << ",NA," << format_real(p.sii_pair) << ','
        << format_real(p.sii_pair_total) << ',' << format_real(p.inflation) << '\n';
  }
  return out.str();
}

enum class Aggregation { kMean, kMeanAbs };

inline const char* to_string(Aggregation a) {
  return a == Aggregation::kMean ? "mean" : "mean-abs";
}

struct CrossRankingEntry {
  Mask set = 0;
  double value = 0.0;
  int rank = 0;  // 1-based
};

// Sets ordered by descending aggregate, ties by ascending lexicographic
// member list.
struct CrossRanking {
  Aggregation aggregation = Aggregation::kMean;
  int k = 1;
  int n = 1;
  std::vector<CrossRankingEntry> entries;
};

inline constexpr int kMaxAggregateExactPlayers = 20;

// Aggregates order-k Shapley-Taylor values over a collection of games on the
// same players and ranks the sets. Exact for n <= 20; larger games need a
// sampling plan, which is then used for every game.
inline CrossRanking aggregate_crosses(const std::vector<Game>& games, int k,
                                      Aggregation aggregation,
                                      const std::optional<SamplingPlan>& plan = std::nullopt,
                                      int threads = 0) {
  if (games.empty()) throw InvalidArgument("aggregate_crosses needs at least one game");
  const int n = games.front().n();
  for (const auto& g : games) {
    if (g.n() != n) {
      throw InvalidArgument("aggregate_crosses: games have mixed player counts (" +
                            std::to_string(n) + " and " + std::to_string(g.n()) + ")");
    }
  }
  if (!plan && n > kMaxAggregateExactPlayers) {
    throw SizeLimitError("exact aggregation supports n <= 20; supply a sampling plan");
  }
  detail::check_order(n, k);
  std::vector<IndexResult> results(games.size());
  parallel_for(games.size(), threads, [&](std::size_t i) {
    if (plan) {
      SamplingPlan p = *plan;
      p.threads = 1;
      results[i] = stv_sampled(games[i], k, p);
    } else {
      results[i] = stv_exact(games[i], k, ExactOptions{1});
    }
  });

  CrossRanking ranking;
  ranking.aggregation = aggregation;
  ranking.k = k;
  ranking.n = n;
  for (const auto& [s, unused] : results.front().values) {
    double total = 0.0;
    for (const auto& r : results) {
      const double v = r.at(s);
      total += aggregation == Aggregation::kMean ? v : std::fabs(v);
    }
    ranking.entries.push_back({s, total / static_cast<double>(results.size()), 0});
  }
  std::sort(ranking.entries.begin(), ranking.entries.end(),
            [](const CrossRankingEntry& a, const CrossRankingEntry& b) {
              if (a.value != b.value) return a.value > b.value;
              return lexicographic_less(a.set, b.set);
            });
  for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
    ranking.entries[i].rank = static_cast<int>(i) + 1;
  }
  return ranking;
}

inline std::string ranking_csv(const CrossRanking& r) {
  std::ostringstream out;
  out << "rank,set,size,aggregation,k,value\n";
  for (const auto& e : r.entries) {
    out << e.rank << ',' << member_list(e.set) << ',' << popcount(e.set) << ','
        << to_string(r.aggregation)
        << ',' << r.k << ',' << format_real(e.value) << '\n';
  }
  return out.str();
}

}  // namespace interax
