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

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "interax/error.hpp"

namespace interax {

using Mask = std::uint64_t;

inline constexpr int kMaxPlayers = 64;
inline constexpr int kMaxExactPlayers = 24;
inline constexpr int kMaxOraclePlayers = 8;

// Mask with the low `n` bits set.
constexpr Mask full_mask(int n) {
  return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
}

inline int popcount(Mask m) { return std::popcount(m); }

inline void check_player_count(int n) {
  if (n < 1 || n > kMaxPlayers) {
    throw InvalidArgument("player count must be in [1, 64], got " +
                          std::to_string(n));
  }
}

// A subset of the players {0, ..., n-1}. Bit i of `bits()` is set iff player
// i belongs to the set.
class PlayerSet {
 public:
  PlayerSet() = default;

  PlayerSet(int n, Mask bits) : bits_(bits), n_(n) {
    check_player_count(n);
    if ((bits & ~full_mask(n)) != 0) {
      throw InvalidArgument("player set has members >= n = " +
                            std::to_string(n));
    }
  }

  static PlayerSet empty(int n) { return PlayerSet(n, 0); }
  static PlayerSet full(int n) { return PlayerSet(n, full_mask(n)); }

  static PlayerSet of(int n, std::span<const int> players) {
    check_player_count(n);
    Mask bits = 0;
    for (int p : players) {
      if (p < 0 || p >= n) {
        throw InvalidArgument("player id " + std::to_string(p) +
                              " out of range for n = " + std::to_string(n));
      }
      bits |= Mask{1} << p;
    }
    return PlayerSet(n, bits);
  }
  static PlayerSet of(int n, std::initializer_list<int> players) {
    return of(n, std::span<const int>(players.begin(), players.size()));
  }

  Mask bits() const { return bits_; }
  int n() const { return n_; }
  int size() const { return popcount(bits_); }
  bool is_empty() const { return bits_ == 0; }
  bool contains(int player) const {
    return player >= 0 && player < n_ && ((bits_ >> player) & 1U) != 0;
  }
  bool is_subset_of(const PlayerSet& other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  bool intersects(const PlayerSet& other) const {
    return (bits_ & other.bits_) != 0;
  }

  PlayerSet complement() const { return PlayerSet(n_, full_mask(n_) & ~bits_); }
  PlayerSet operator|(const PlayerSet& o) const {
    return PlayerSet(join_n(o), bits_ | o.bits_);
  }
  PlayerSet operator&(const PlayerSet& o) const {
    return PlayerSet(join_n(o), bits_ & o.bits_);
  }
  PlayerSet operator-(const PlayerSet& o) const {
    return PlayerSet(join_n(o), bits_ & ~o.bits_);
  }

  // Members in ascending order.
  std::vector<int> players() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (Mask m = bits_; m != 0; m &= m - 1) {
      out.push_back(std::countr_zero(m));
    }
    return out;
  }

  // "{0,2,5}" style rendering.
  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int p : players()) {
      if (!first) s += ',';
      s += std::to_string(p);
      first = false;
    }
    return s + "}";
  }

  friend bool operator==(const PlayerSet& a, const PlayerSet& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }
  friend auto operator<=>(const PlayerSet& a, const PlayerSet& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  int join_n(const PlayerSet& o) const {
    if (o.n_ != n_) {
      throw InvalidArgument("player sets over different player counts");
    }
    return n_;
  }

  Mask bits_ = 0;
  int n_ = 1;
};

// Space-separated ascending member ids, e.g. "0 2 5"; used in CSV output.
inline std::string member_list(Mask m) {
  std::string out;
  for (; m != 0; m &= m - 1) {
    if (!out.empty()) out += ' ';
    out += std::to_string(std::countr_zero(m));
  }
  return out;
}

// Lexicographic order on the ascending member lists, e.g. {0,1} < {0,2} <
// {1}. Used for stable tie-breaking in rankings.
inline bool lexicographic_less(Mask a, Mask b) {
  while (a != 0 && b != 0) {
    const int pa = std::countr_zero(a);
    const int pb = std::countr_zero(b);
    if (pa != pb) return pa < pb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

// Calls fn(sub) for every sub ⊆ mask in ascending numeric order, starting at
// the empty set.
template <typename Fn>
inline void for_each_subset(Mask mask, Fn&& fn) {
  Mask sub = 0;
  do {
    fn(sub);
    sub = (sub - mask) & mask;
  } while (sub != 0);
}

// Calls fn(mask) for every mask over n players with exactly k bits set, in
// ascending numeric order (Gosper's hack).
template <typename Fn>
inline void for_each_k_subset(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    fn(Mask{0});
    return;
  }
  const Mask limit = full_mask(n);
  Mask m = full_mask(k);
  while (true) {
    fn(m);
    if (m == (limit & ~full_mask(n - k))) break;  // highest k bits
    const Mask c = m & (~m + 1);
    const Mask r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
}

// All masks S with 1 <= |S| <= k, grouped by size then ascending.
inline std::vector<Mask> sets_up_to_order(int n, int k) {
  std::vector<Mask> out;
  for (int s = 1; s <= k; ++s) {
    for_each_k_subset(n, s, [&](Mask m) { out.push_back(m); });
  }
  return out;
}

}  // namespace interax
