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

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "interax/error.hpp"
#include "interax/game.hpp"
#include "interax/player_set.hpp"

namespace interax {

// File formats:
//   {"format":"tabular","n":N,"values":[2^N reals, index = bitmask]}
//   {"format":"mobius","n":N,"terms":[{"set":[ids],"coef":real}, ...]}

namespace detail {

inline nlohmann::json parse_json_text(const std::string& text,
                                      const std::string& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(origin + ": invalid JSON: " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline int read_player_count(const nlohmann::json& doc,
                             const std::string& origin) {
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer()) {
    throw FormatError(origin + ": missing integer field \"n\"");
  }
  const auto n = doc["n"].get<long long>();
  if (n < 1 || n > kMaxPlayers) {
    throw FormatError(origin + ": n must be in [1, 64], got " +
                      std::to_string(n));
  }
  return static_cast<int>(n);
}

inline void expect_format(const nlohmann::json& doc, const char* expected,
                          const std::string& origin) {
  if (!doc.is_object() || !doc.contains("format") ||
      !doc["format"].is_string() ||
      doc["format"].get<std::string>() != expected) {
    throw FormatError(origin + ": expected \"format\":\"" + expected + "\"");
  }
}

}  // namespace detail

inline Game parse_tabular(const std::string& text,
                          const std::string& origin = "tabular game") {
  const auto doc = detail::parse_json_text(text, origin);
  detail::expect_format(doc, "tabular", origin);
  const int n = detail::read_player_count(doc, origin);
  if (n > kMaxExactPlayers) {
    throw FormatError(origin + ": dense tables are limited to n <= " +
                      std::to_string(kMaxExactPlayers) + ", got n = " +
                      std::to_string(n));
  }
  if (!doc.contains("values") || !doc["values"].is_array()) {
    throw FormatError(origin + ": missing array field \"values\"");
  }
  const auto& arr = doc["values"];
  const std::size_t expected = std::size_t{1} << n;
  if (arr.size() != expected) {
    throw FormatError(origin + ": length mismatch: expected " +
                      std::to_string(expected) + " values for n = " +
                      std::to_string(n) + ", got " + std::to_string(arr.size()));
  }
  std::vector<double> values;
  values.reserve(expected);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw FormatError(origin + ": values[" + std::to_string(i) +
                        "] is not a number");
    }
    values.push_back(arr[i].get<double>());
  }
  return Game::from_table(n, std::move(values), GameKind::kTabular, origin);
}

inline MobiusExpansion parse_mobius_expansion(
    const std::string& text, const std::string& origin = "mobius game") {
  const auto doc = detail::parse_json_text(text, origin);
  detail::expect_format(doc, "mobius", origin);
  MobiusExpansion expansion;
  expansion.n = detail::read_player_count(doc, origin);
  if (!doc.contains("terms") || !doc["terms"].is_array()) {
    throw FormatError(origin + ": missing array field \"terms\"");
  }
  for (std::size_t i = 0; i < doc["terms"].size(); ++i) {
    const auto& term = doc["terms"][i];
    const std::string where = origin + ": terms[" + std::to_string(i) + "]";
    if (!term.is_object() || !term.contains("set") || !term["set"].is_array() ||
        !term.contains("coef") || !term["coef"].is_number()) {
      throw FormatError(where + " needs \"set\" (array) and \"coef\" (number)");
    }
    Mask bits = 0;
    for (const auto& id : term["set"]) {
      if (!id.is_number_integer()) {
        throw FormatError(where + ": player ids must be integers");
      }
      const auto p = id.get<long long>();
      if (p < 0 || p >= expansion.n) {
        throw FormatError(where + ": player id " + std::to_string(p) +
                          " out of range");
      }
      if ((bits >> p) & 1U) {
        throw FormatError(where + ": player id " + std::to_string(p) +
                          " repeated");
      }
      bits |= Mask{1} << p;
    }
    if (!expansion.coefficients.emplace(bits, term["coef"].get<double>())
             .second) {
      throw FormatError(where + ": duplicate set entry " +
                        PlayerSet(expansion.n, bits).to_string());
    }
  }
  return expansion;
}

inline Game parse_mobius(const std::string& text,
                         const std::string& origin = "mobius game") {
  return make_mobius_game(parse_mobius_expansion(text, origin));
}

inline Game load_tabular(const std::string& path) {
  return parse_tabular(detail::read_file(path), path);
}

inline MobiusExpansion load_mobius_expansion(const std::string& path) {
  return parse_mobius_expansion(detail::read_file(path), path);
}

inline Game load_mobius(const std::string& path) {
  return make_mobius_game(load_mobius_expansion(path));
}

inline nlohmann::json tabular_json(const Game& game) {
  const auto table = game.table();
  nlohmann::json values = nlohmann::json::array();
  for (double v : table) {
    if (!std::isfinite(v)) throw InvalidArgument("game value is not finite");
    values.push_back(v);
  }
  return {{"format", "tabular"}, {"n", game.n()}, {"values", std::move(values)}};
}

inline nlohmann::json mobius_json(const MobiusExpansion& expansion) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [t, a] : expansion.coefficients) {
    terms.push_back(
        {{"set", PlayerSet(expansion.n, t).players()}, {"coef", a}});
  }
  return {{"format", "mobius"}, {"n", expansion.n}, {"terms", std::move(terms)}};
}

}  // namespace interax
