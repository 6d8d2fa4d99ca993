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

#include <cstdio>
#include <fstream>
#include <string>

#include "interax/builtin_spec.hpp"
#include "interax/calculus.hpp"
#include "interax/format.hpp"
#include "interax/game_io.hpp"
#include "interax/indices.hpp"
#include "oracle.hpp"

namespace interax {
namespace {

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(GameIo, TabularRoundTrip) {
  const auto g = oracle::random_real_game(5, 11);
  const auto text = tabular_json(g).dump();
  const auto back = parse_tabular(text);
  ASSERT_EQ(back.n(), 5);
  for (Mask s = 0; s < 32; ++s) EXPECT_EQ(back(s), g(s));
}

TEST(GameIo, TabularErrorsNameTheInput) {
  EXPECT_THROW(parse_tabular("{", "f.json"), FormatError);
  EXPECT_NE(message_of([] { parse_tabular("{", "f.json"); }).find("f.json"), std::string::npos);
  const auto msg = message_of(
      [] { parse_tabular(R"({"format":"tabular","n":3,"values":[1,2,3]})", "g.json"); });
  EXPECT_NE(msg.find("g.json"), std::string::npos);
  EXPECT_NE(msg.find("length mismatch"), std::string::npos);
  EXPECT_THROW(parse_tabular(R"({"format":"mobius","n":1,"values":[1,2]})"), FormatError);
  EXPECT_THROW(parse_tabular(R"({"format":"tabular","values":[1,2]})"), FormatError);
  EXPECT_THROW(parse_tabular(R"({"format":"tabular","n":1,"values":[1,"x"]})"), FormatError);
  EXPECT_NE(message_of([] { parse_tabular(R"({"format":"tabular","n":25,"values":[]})"); })
                .find("n <= 24"),
            std::string::npos);
  EXPECT_THROW(load_tabular("/nonexistent/file.json"), FormatError);
}

TEST(GameIo, MobiusParsing) {
  const auto g = parse_mobius(
      R"({"format":"mobius","n":3,"terms":[{"set":[0,1],"coef":2},{"set":[],"coef":1}]})");
  EXPECT_EQ(g(0), 1.0);
  EXPECT_EQ(g(0b011), 3.0);
  EXPECT_EQ(g(0b111), 3.0);
  EXPECT_THROW(
      parse_mobius(R"({"format":"mobius","n":3,"terms":[{"set":[0,1],"coef":2},{"set":[1,0],"coef":1}]})"),
      FormatError);
  EXPECT_THROW(parse_mobius(R"({"format":"mobius","n":3,"terms":[{"set":[0,0],"coef":2}]})"),
               FormatError);
  EXPECT_THROW(parse_mobius(R"({"format":"mobius","n":3,"terms":[{"set":[3],"coef":2}]})"),
               FormatError);
  EXPECT_THROW(parse_mobius(R"({"format":"mobius","n":3,"terms":[{"set":[1]}]})"), FormatError);
}

TEST(GameIo, MobiusJsonRoundTrip) {
  const auto g = oracle::random_integer_game(4, 5);
  const auto e = mobius_transform(g);
  const auto back = parse_mobius(mobius_json(e).dump());
  for (Mask s = 0; s < 16; ++s) EXPECT_EQ(back(s), g(s));
}

TEST(GameIo, FileLoading) {
  const std::string path = ::testing::TempDir() + "interax_io_test.json";
  {
    std::ofstream f(path);
    f << R"({"format":"tabular","n":1,"values":[0.5,1.5]})";
  }
  EXPECT_EQ(load_tabular(path)(1), 1.5);
  std::remove(path.c_str());
}

TEST(BuiltinSpec, PlayerLists) {
  EXPECT_EQ(parse_player_list("0-2;5"), (std::vector<int>{0, 1, 2, 5}));
  EXPECT_EQ(parse_player_list("3"), std::vector<int>{3});
  EXPECT_THROW(parse_player_list("2-1"), InvalidArgument);
  EXPECT_THROW(parse_player_list("a"), InvalidArgument);
}

TEST(BuiltinSpec, ParsesEveryFamily) {
  EXPECT_EQ(parse_builtin("unanimity:n=5,set=0-2")(0b00111), 1.0);
  EXPECT_EQ(parse_builtin("interaction:n=4,set=1;3,c=2.5")(0b1010), 2.5);
  EXPECT_EQ(parse_builtin("majority:n=4").n(), 4);
  EXPECT_EQ(parse_builtin("linear-crosses:c=3")(7), 6.0);
  EXPECT_EQ(parse_builtin("product:n=3")(7), 1.0);
  EXPECT_EQ(parse_builtin("additive:w=1;2;4")(6), 6.0);
  EXPECT_EQ(parse_builtin("constant:n=2,c=-1")(0), -1.0);
}

TEST(BuiltinSpec, Errors) {
  EXPECT_THROW(parse_builtin("nope:n=3"), InvalidArgument);
  EXPECT_THROW(parse_builtin("majority"), InvalidArgument);
  EXPECT_THROW(parse_builtin("majority:n=3,x=1"), InvalidArgument);
  EXPECT_THROW(parse_builtin("majority:n=3,n=4"), InvalidArgument);
  EXPECT_THROW(parse_builtin("majority:n=0"), InvalidArgument);
  EXPECT_THROW(parse_builtin("majority:n=abc"), InvalidArgument);
  EXPECT_THROW(parse_builtin("unanimity:n=3,set=5"), InvalidArgument);
}

TEST(Format, CsvHeaderAndRows) {
  const auto r = stv_exact(make_linear_crosses(3.0), 2);
  const auto csv = index_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "set,size,method,k,value");
  EXPECT_NE(csv.find("\n0 1,2,stv,2,1\n"), std::string::npos);
  const auto j = index_json(r);
  EXPECT_EQ(j["method"], "stv");
  EXPECT_EQ(j["k"], 2);
  EXPECT_EQ(j["values"].size(), 6u);
  EXPECT_TRUE(j.contains("meta"));
  EXPECT_NE(index_table(r).find("{0,1}"), std::string::npos);
}

}  // namespace
}  // namespace interax
