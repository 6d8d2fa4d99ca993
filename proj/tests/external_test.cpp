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

#include <string>
#include <thread>
#include <vector>

#include "interax/external.hpp"
#include "interax/indices.hpp"

namespace interax {
namespace {

const std::string kMajority = INTERAX_MAJORITY_EVALUATOR;

std::string misbehaving(const std::string& mode) {
  return std::string(INTERAX_MISBEHAVING_EVALUATOR) + " " + mode;
}

TEST(External, MajorityMatchesBuiltinBitForBit) {
  for (int n : {3, 4, 7}) {
    const Game ext = attach_external(kMajority, n);
    const Game builtin = make_majority(n);
    for (Mask s = 0; s <= full_mask(n); ++s) EXPECT_EQ(ext(s), builtin(s));
    const auto a = stv_exact(ext, 2);
    const auto b = stv_exact(builtin, 2);
    EXPECT_EQ(a.values, b.values);
  }
}

TEST(External, MemoizesRepeatedQueries) {
  auto [game, handle] = attach_external_with_handle(kMajority, 5);
  for (int rep = 0; rep < 3; ++rep)
    for (Mask s = 0; s < 32; ++s) game(s);
  EXPECT_EQ(handle->round_trips(), 32u);
  EXPECT_EQ(handle->cache_size(), 32u);
}

TEST(External, LruEvictsBeyondCapacity) {
  ExternalOptions opts;
  opts.cache_capacity = 4;
  auto [game, handle] = attach_external_with_handle(kMajority, 5, opts);
  for (Mask s = 0; s < 8; ++s) game(s);
  EXPECT_EQ(handle->cache_size(), 4u);
  game(7);  // still cached
  EXPECT_EQ(handle->round_trips(), 8u);
  game(0);  // evicted
  EXPECT_EQ(handle->round_trips(), 9u);
}

TEST(External, ConcurrentCallersAreSerialized) {
  auto [game, handle] = attach_external_with_handle(misbehaving("count"), 8);
  std::vector<std::jthread> workers;
  std::vector<int> bad(4, 0);
  for (int w = 0; w < 4; ++w) {
    workers.emplace_back([&, w] {
      for (Mask s = 0; s < 256; ++s)
        if (game(s) != popcount(s)) ++bad[w];
    });
  }
  workers.clear();
  for (int b : bad) EXPECT_EQ(b, 0);
  EXPECT_EQ(handle->round_trips(), 256u);
}

TEST(External, BadHandshake) {
  try {
    attach_external(misbehaving("bad-init"), 3);
    FAIL();
  } catch (const EvaluationError& e) {
    EXPECT_NE(std::string(e.what()).find("protocol"), std::string::npos);
    EXPECT_EQ(e.raw_line(), "HELLO");
  }
}

TEST(External, NonNumericReplyCarriesRawLine) {
  const Game g = attach_external(misbehaving("non-numeric"), 3);
  try {
    g(1);
    FAIL();
  } catch (const EvaluationError& e) {
    EXPECT_NE(std::string(e.what()).find("non-numeric"), std::string::npos);
    EXPECT_EQ(e.raw_line(), "banana");
  }
  // The evaluator stays failed.
  EXPECT_THROW(g(2), EvaluationError);
}

TEST(External, NonFiniteReply) {
  const Game g = attach_external(misbehaving("non-finite"), 3);
  try {
    g(1);
    FAIL();
  } catch (const EvaluationError& e) {
    EXPECT_NE(std::string(e.what()).find("non-finite"), std::string::npos);
  }
}

TEST(External, ChildExitMidStream) {
  const Game g = attach_external(misbehaving("exit-after 2"), 3);
  EXPECT_EQ(g(1), 1.0);
  EXPECT_EQ(g(3), 2.0);
  try {
    g(7);
    FAIL();
  } catch (const EvaluationError& e) {
    EXPECT_NE(std::string(e.what()).find("exited"), std::string::npos);
  }
  // Cached answers remain available.
  EXPECT_EQ(g(1), 1.0);
}

TEST(External, MissingCommand) {
  EXPECT_THROW(
      {
        const Game g = attach_external("/nonexistent/evaluator-binary", 3);
        g(1);
      },
      EvaluationError);
}

TEST(External, RejectsBadPlayerCount) {
  EXPECT_THROW(attach_external(kMajority, 0), InvalidArgument);
  EXPECT_THROW(attach_external(kMajority, 65), InvalidArgument);
}

}  // namespace
}  // namespace interax
