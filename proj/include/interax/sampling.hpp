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
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "interax/calculus.hpp"
#include "interax/error.hpp"
#include "interax/game.hpp"
#include "interax/indices.hpp"
#include "interax/parallel.hpp"
#include "interax/player_set.hpp"

namespace interax {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based SplitMix64 stream: the i-th output is mix64(key + i·γ), so
// any (key, counter) position can be reproduced independently of the others.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next() {
    ++counter_;
    return mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
  }

  // Uniform integer in [0, bound), bound >= 1 (Lemire's rejection method).
  std::uint64_t bounded(std::uint64_t bound) {
    unsigned __int128 product =
        static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

namespace detail {

inline constexpr std::uint64_t kSampleStreamSalt = 0x632be59bd9b4e019ULL;
inline constexpr std::uint64_t kWarmupStreamSalt = 0x8cb92ba72f3d8dd7ULL;
inline constexpr std::uint64_t kWarmupPermutations = 64;
inline constexpr std::uint64_t kBlockSize = 256;

}  // namespace detail

// The uniformly random ordering used for sample `index` of a run seeded with
// `seed`: a Fisher-Yates shuffle driven by its own counter stream.
inline std::vector<int> sample_permutation(std::uint64_t seed,
                                           std::uint64_t index, int n,
                                           std::uint64_t salt = detail::kSampleStreamSalt) {
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  CounterRng rng(mix64(seed ^ salt) ^ mix64(index + salt));
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.bounded(static_cast<std::uint64_t>(i) + 1));
    std::swap(order[static_cast<std::size_t>(i)], order[j]);
  }
  return order;
}

// Hoeffding sample count m = ceil(2 ln(2/δ) r² / ε²) guaranteeing
// Pr(|estimate - value| > ε) < δ for one target whose per-ordering values lie
// in [-r, r].
inline std::uint64_t required_samples(double epsilon, double delta, double r) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("epsilon must be > 0");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidArgument("delta must lie in (0, 1)");
  }
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("range r must be > 0");
  const double m = std::ceil(2.0 * std::log(2.0 / delta) * r * r / (epsilon * epsilon));
  if (m >= 1.8e19) throw InvalidArgument("required sample count overflows");
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(m));
}

// Parameters of a permutation-sampling run. Either `samples` is given, or
// `epsilon` and `delta` are, in which case m comes from required_samples with
// `range` (or a warmup estimate of it when absent).
struct SamplingPlan {
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::optional<double> range;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0;
  std::vector<Mask> targets;  // |S| = k each; empty means every k-subset
  int threads = 0;
};

namespace detail {

struct SamplingTargets {
  std::vector<Mask> top;                // |S| = k
  std::vector<SignedSubsets> top_ds;
  std::vector<Mask> lower;              // 1 <= |S| < k
};

inline SamplingTargets resolve_targets(int n, int k, const std::vector<Mask>& requested) {
  SamplingTargets out;
  if (requested.empty()) {
    for_each_k_subset(n, k, [&](Mask s) { out.top.push_back(s); });
  } else {
    for (Mask s : requested) {
      if ((s & ~full_mask(n)) != 0) {
        throw InvalidArgument("sampling target has members >= n");
      }
      if (popcount(s) != k) {
        throw InvalidArgument("sampling target " + PlayerSet(n, s).to_string() +
                              " has size " + std::to_string(popcount(s)) +
                              ", expected k = " + std::to_string(k));
      }
      out.top.push_back(s);
    }
    std::sort(out.top.begin(), out.top.end());
    out.top.erase(std::unique(out.top.begin(), out.top.end()), out.top.end());
  }
  Mask covered = 0;
  for (Mask s : out.top) covered |= s;
  for (int s = 1; s < k; ++s) {
    for_each_k_subset(popcount(covered), s, [&](Mask compact) {
      Mask real = 0;
      int idx = 0;
      for (Mask c = covered; c != 0; c &= c - 1, ++idx) {
        if ((compact >> idx) & 1U) real |= c & (~c + 1);
      }
      out.lower.push_back(real);
    });
  }
  out.top_ds.reserve(out.top.size());
  for (Mask s : out.top) out.top_ds.emplace_back(s);
  return out;
}

// Adds δ_S v(π^S) for every target under ordering `order` into acc.
inline void accumulate_ordering(const Game& game, const SamplingTargets& targets,
                                const std::vector<int>& order,
                                std::vector<int>& position,
                                std::vector<Mask>& prefix, double* acc) {
  const std::size_t n = order.size();
  prefix[0] = 0;
  for (std::size_t j = 0; j < n; ++j) {
    position[static_cast<std::size_t>(order[j])] = static_cast<int>(j);
    prefix[j + 1] = prefix[j] | (Mask{1} << order[j]);
  }
  for (std::size_t i = 0; i < targets.top.size(); ++i) {
    int first = static_cast<int>(n);
    for (Mask m = targets.top[i]; m != 0; m &= m - 1) {
      first = std::min(first, position[static_cast<std::size_t>(std::countr_zero(m))]);
    }
    acc[i] += derivative_at(game, targets.top_ds[i], prefix[static_cast<std::size_t>(first)]);
  }
}

// Pairwise tree reduction of per-block partial sums; the tree shape depends
// only on the block count.
inline double tree_sum(const std::vector<double>& blocks, std::size_t begin,
                       std::size_t end, std::size_t stride, std::size_t offset) {
  if (end - begin == 1) return blocks[begin * stride + offset];
  const std::size_t mid = begin + (end - begin) / 2;
  return tree_sum(blocks, begin, mid, stride, offset) +
         tree_sum(blocks, mid, end, stride, offset);
}

// Mean over sample indices [first, first + count) of δ_S v(π^S), per target.
inline std::vector<double> sample_means(const Game& game,
                                        const SamplingTargets& targets,
                                        std::uint64_t seed, std::uint64_t first,
                                        std::uint64_t count, int threads,
                                        std::uint64_t salt = kSampleStreamSalt) {
  const int n = game.n();
  const std::size_t width = targets.top.size();
  const std::uint64_t nblocks = (count + kBlockSize - 1) / kBlockSize;
  std::vector<double> blocks(static_cast<std::size_t>(nblocks) * width, 0.0);
  parallel_for(static_cast<std::size_t>(nblocks), threads, [&](std::size_t b) {
    std::vector<int> position(static_cast<std::size_t>(n));
    std::vector<Mask> prefix(static_cast<std::size_t>(n) + 1);
    double* acc = blocks.data() + b * width;
    const std::uint64_t lo = b * kBlockSize;
    const std::uint64_t hi = std::min<std::uint64_t>(count, lo + kBlockSize);
    for (std::uint64_t j = lo; j < hi; ++j) {
      const auto order = sample_permutation(seed, first + j, n, salt);
      accumulate_ordering(game, targets, order, position, prefix, acc);
    }
  });
  std::vector<double> means(width, 0.0);
  if (nblocks == 0) return means;
  for (std::size_t i = 0; i < width; ++i) {
    means[i] = tree_sum(blocks, 0, static_cast<std::size_t>(nblocks), width, i) /
               static_cast<double>(count);
  }
  return means;
}

inline void check_sampling_size(int n, int k) {
  check_player_count(n);
  check_order(n, k);
}

inline void fill_lower_order(const Game& game, const SamplingTargets& targets,
                             IndexResult& r) {
  for (Mask s : targets.lower) {
    r.values.emplace(s, derivative_at(game, SignedSubsets(s), 0));
  }
}

}  // namespace detail

// max - min of δ_S v(π^S) over all targets and 64 warmup orderings drawn from
// a stream separate from the estimation samples.
inline double warmup_range(const Game& game, int k, std::uint64_t seed,
                           const std::vector<Mask>& requested_targets = {}) {
  detail::check_sampling_size(game.n(), k);
  const auto targets = detail::resolve_targets(game.n(), k, requested_targets);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::vector<int> position(static_cast<std::size_t>(game.n()));
  std::vector<Mask> prefix(static_cast<std::size_t>(game.n()) + 1);
  std::vector<double> acc(targets.top.size());
  for (std::uint64_t j = 0; j < detail::kWarmupPermutations; ++j) {
    std::fill(acc.begin(), acc.end(), 0.0);
    const auto order = sample_permutation(seed, j, game.n(), detail::kWarmupStreamSalt);
    detail::accumulate_ordering(game, targets, order, position, prefix, acc.data());
    for (double x : acc) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  return hi - lo;
}

// Unbiased Monte Carlo estimate of the order-k Shapley-Taylor values of the
// plan's targets: the mean over m seeded uniform orderings of δ_S v(π^S).
// One ordering is shared by all targets of a sample. Lower-order sets inside
// the targets' support are returned exactly as δ_S v(∅).
inline IndexResult stv_sampled(const Game& game, int k, const SamplingPlan& plan) {
  const int n = game.n();
  detail::check_sampling_size(n, k);
  const auto targets = detail::resolve_targets(n, k, plan.targets);

  IndexResult r;
  r.method = IndexMethod::kStv;
  r.k = k;
  r.n = n;
  r.meta.exact = false;
  r.meta.mode = "sample";
  r.meta.seed = plan.seed;

  std::uint64_t m = 0;
  if (plan.samples) {
    if (*plan.samples == 0) throw InvalidArgument("sample count must be >= 1");
    m = *plan.samples;
    r.meta.range_provenance = "unused";
    r.meta.range = plan.range;
  } else {
    if (!plan.epsilon || !plan.delta) {
      throw InvalidArgument("sampling needs either a sample count or epsilon and delta");
    }
    double range = 0.0;
    if (plan.range) {
      range = *plan.range;
      r.meta.range_provenance = "user";
    } else {
      range = 2.0 * warmup_range(game, k, plan.seed, targets.top);
      r.meta.range_provenance = "warmup";
      if (!(range > 0.0)) {
        range = *plan.epsilon;
        r.meta.range_provenance = "warmup-degenerate";
      }
    }
    r.meta.range = range;
    m = required_samples(*plan.epsilon, *plan.delta, range);
  }
  r.meta.samples = m;

  const auto means = detail::sample_means(game, targets, plan.seed, 0, m, plan.threads);
  detail::fill_lower_order(game, targets, r);
  for (std::size_t i = 0; i < targets.top.size(); ++i) {
    r.values.emplace(targets.top[i], means[i]);
  }
  return r;
}

// Median-of-means variant: `groups` (odd) independent group means of
// `per_group` orderings each, then the per-target median. Group g uses sample
// indices [g·per_group, (g+1)·per_group) of the seed's stream, so groups = 1
// reproduces stv_sampled with m = per_group.
inline IndexResult stv_sampled_mom(const Game& game, int k, std::uint64_t groups,
                                   std::uint64_t per_group, std::uint64_t seed,
                                   const std::vector<Mask>& requested_targets = {},
                                   int threads = 0) {
  const int n = game.n();
  detail::check_sampling_size(n, k);
  if (groups == 0 || groups % 2 == 0) {
    throw InvalidArgument("median-of-means needs an odd group count, got " +
                          std::to_string(groups));
  }
  if (per_group == 0) throw InvalidArgument("per-group sample count must be >= 1");
  const auto targets = detail::resolve_targets(n, k, requested_targets);

  std::vector<std::vector<double>> group_means;
  group_means.reserve(groups);
  for (std::uint64_t g = 0; g < groups; ++g) {
    group_means.push_back(
        detail::sample_means(game, targets, seed, g * per_group, per_group, threads));
  }

  IndexResult r;
  r.method = IndexMethod::kStv;
  r.k = k;
  r.n = n;
  r.meta.exact = false;
  r.meta.mode = "mom";
  r.meta.seed = seed;
  r.meta.samples = groups * per_group;
  r.meta.groups = groups;
  detail::fill_lower_order(game, targets, r);
  std::vector<double> column(groups);
  for (std::size_t i = 0; i < targets.top.size(); ++i) {
    for (std::uint64_t g = 0; g < groups; ++g) column[g] = group_means[g][i];
    auto mid = column.begin() + static_cast<std::ptrdiff_t>(groups / 2);
    std::nth_element(column.begin(), mid, column.end());
    r.values.emplace(targets.top[i], *mid);
  }
  return r;
}

}  // namespace interax
