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

#include <cstdio>
#include <sstream>
#include <string>

#include "json.hpp"

#include "interax/indices.hpp"
#include "interax/player_set.hpp"

namespace interax {

// CSV with the fixed header `set,size,method,k,value`; sets are rendered as
// space-separated ascending player ids and values with 17 significant digits.
inline std::string index_csv(const IndexResult& r) {
  std::ostringstream out;
  out << "set,size,method,k,value\n";
  char buf[32];
  for (const auto& [s, v] : r.ordered()) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << member_list(s) << ',' << popcount(s) << ',' << to_string(r.method) << ','
        << r.k << ',' << buf << '\n';
  }
  return out.str();
}

inline nlohmann::json index_json(const IndexResult& r) {
  nlohmann::json meta = {{"exact", r.meta.exact}, {"mode", r.meta.mode}};
  if (r.meta.samples != 0) meta["samples"] = r.meta.samples;
  if (r.meta.groups != 0) meta["groups"] = r.meta.groups;
  if (r.meta.seed) meta["seed"] = *r.meta.seed;
  if (r.meta.range) meta["range"] = *r.meta.range;
  if (!r.meta.range_provenance.empty()) meta["range_provenance"] = r.meta.range_provenance;
  if (!r.meta.convention.empty()) meta["convention"] = r.meta.convention;
  nlohmann::json values = nlohmann::json::array();
  for (const auto& [s, v] : r.ordered()) {
    values.push_back({{"set", PlayerSet(r.n, s).players()},
                      {"size", popcount(s)},
                      {"method", to_string(r.method)},
                      {"k", r.k},
                      {"value", v}});
  }
  return {{"method", to_string(r.method)}, {"k", r.k},          {"n", r.n},
          {"meta", std::move(meta)},        {"values", std::move(values)}};
}

// Human-readable aligned table.
inline std::string index_table(const IndexResult& r) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "# method=%s k=%d n=%d mode=%s", to_string(r.method),
                r.k, r.n, r.meta.mode.c_str());
  out << line;
  if (r.meta.samples != 0) out << " samples=" << r.meta.samples;
  if (r.meta.seed) out << " seed=" << *r.meta.seed;
  if (r.meta.range) out << " range=" << *r.meta.range << " (" << r.meta.range_provenance << ")";
  out << '\n';
  if (!r.meta.convention.empty()) out << "# " << r.meta.convention << '\n';
  std::snprintf(line, sizeof line, "%-24s %4s %22s\n", "set", "size", "value");
  out << line;
  for (const auto& [s, v] : r.ordered()) {
    std::snprintf(line, sizeof line, "%-24s %4d %22.12g\n",
                  PlayerSet(r.n, s).to_string().c_str(), popcount(s), v);
    out << line;
  }
  return out.str();
}

}  // namespace interax
