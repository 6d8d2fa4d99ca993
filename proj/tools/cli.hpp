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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "interax/interax.hpp"

namespace interax::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

// Where a game comes from; exactly one source must be given.
struct GameSource {
  std::string builtin;
  std::string tabular;
  std::string mobius;
  std::string external;
  int external_n = 0;

  void add_options(CLI::App* app) {
    auto* b = app->add_option("--builtin", builtin, "built-in game, e.g. majority:n=5");
    auto* t = app->add_option("--tabular", tabular, "tabular game JSON file");
    auto* m = app->add_option("--mobius", mobius, "Mobius-coefficient game JSON file");
    auto* e = app->add_option("--external", external,
                              "command speaking the evaluator line protocol");
    app->add_option("--n", external_n, "player count for --external");
    b->excludes(t)->excludes(m)->excludes(e);
    t->excludes(m)->excludes(e);
    m->excludes(e);
  }

  Game load() const {
    if (!builtin.empty()) return parse_builtin(builtin);
    if (!tabular.empty()) return load_tabular(tabular);
    if (!mobius.empty()) return load_mobius(mobius);
    if (!external.empty()) {
      if (external_n < 1) throw InvalidArgument("--external needs --n <players>");
      return attach_external(external, external_n);
    }
    throw CLI::RequiredError("a game source (--builtin, --tabular, --mobius or --external)");
  }
};

struct Config {
  GameSource source;
  std::string method = "stv";
  int k = 1;
  std::string mode = "exact";
  bool main_effects = false;
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::optional<double> range;
  std::optional<std::uint64_t> samples;
  std::uint64_t groups = 1;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> targets;
  std::string restrict_list;
  std::string fill = "baseline";
  std::string output = "table";
  std::string out_path;
  int threads = 0;
  std::string emit_format = "tabular";
  int min_n = 3;
  int max_n = 12;
  std::string gnuplot_path;
  double cross_c = 3.0;
  int product_max_n = 10;
  std::vector<std::string> agg_builtin;
  std::vector<std::string> agg_tabular;
  std::vector<std::string> agg_mobius;
  std::string aggregation = "mean";
};

namespace detail {

inline void write_output(const Config& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw Error("cannot write " + cfg.out_path);
  f << text;
}

inline std::uint64_t resolve_seed(const Config& cfg, std::ostream& err) {
  if (cfg.seed) return *cfg.seed;
  std::random_device rd;
  const std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  err << "interax: no --seed given, using seed " << seed << "\n";
  return seed;
}

inline std::vector<Mask> parse_targets(const Config& cfg, int n) {
  std::vector<Mask> out;
  for (const auto& t : cfg.targets) {
    out.push_back(PlayerSet::of(n, parse_player_list(t, "--target")).bits());
  }
  return out;
}

inline std::string render(const Config& cfg, const IndexResult& r) {
  if (cfg.output == "csv") return index_csv(r);
  if (cfg.output == "json") return index_json(r).dump(2) + "\n";
  return index_table(r);
}

inline Game apply_restriction(const Config& cfg, Game game) {
  if (cfg.restrict_list.empty()) return game;
  const auto keep = PlayerSet::of(game.n(), parse_player_list(cfg.restrict_list, "--restrict"));
  return restrict_players(game, keep, cfg.fill == "grand" ? Fill::kGrand : Fill::kBaseline);
}

inline IndexResult compute_index(const Config& cfg, const Game& game, std::ostream& err) {
  const ExactOptions exact{cfg.threads};
  const int k = cfg.method == "shapley" ? 1 : cfg.k;
  if (cfg.method == "sii") {
    if (cfg.mode != "exact") {
      throw InvalidArgument("--method sii supports only --mode exact");
    }
    if (cfg.main_effects) {
      if (cfg.k != 2) throw InvalidArgument("--main-effects requires --k 2");
      return sii_main_effects(game, exact);
    }
    return sii_index(game, k, exact);
  }
  if (cfg.main_effects) throw InvalidArgument("--main-effects applies to --method sii only");
  IndexResult r;
  if (cfg.mode == "exact") {
    r = cfg.method == "shapley" ? shapley(game, exact) : stv_exact(game, k, exact);
  } else if (cfg.mode == "oracle") {
    r = stv_permutation_oracle(game, k);
  } else if (cfg.mode == "sample") {
    SamplingPlan plan;
    plan.epsilon = cfg.epsilon;
    plan.delta = cfg.delta;
    plan.range = cfg.range;
    plan.samples = cfg.samples;
    plan.seed = resolve_seed(cfg, err);
    plan.targets = parse_targets(cfg, game.n());
    plan.threads = cfg.threads;
    r = stv_sampled(game, k, plan);
  } else {
    if (!cfg.samples) throw InvalidArgument("--mode mom needs --samples (per group)");
    r = stv_sampled_mom(game, k, cfg.groups, *cfg.samples, resolve_seed(cfg, err),
                        parse_targets(cfg, game.n()), cfg.threads);
  }
  if (cfg.method == "shapley") r.method = IndexMethod::kShapley;
  return r;
}

}  // namespace detail

// Entry point of the `interax` command. Returns 0 on success, 1 on domain
// errors (bad inputs, size limits, evaluator failures) and 2 on usage errors.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  Config cfg;
  CLI::App app{"Shapley, Shapley-Taylor and Shapley interaction indices of set functions",
               "interax"};
  app.require_subcommand(1);

  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "worker threads (default: all cores)")
        ->check(CLI::NonNegativeNumber);
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_path, "write output to this file instead of stdout");
  };

  auto* game_cmd = app.add_subcommand("game", "game utilities");
  game_cmd->require_subcommand(1);
  auto* emit = game_cmd->add_subcommand("emit", "write a game as tabular or Mobius JSON");
  cfg.source.add_options(emit);
  emit->add_option("--format", cfg.emit_format, "tabular | mobius")
      ->check(CLI::IsMember({"tabular", "mobius"}));
  add_out(emit);

  auto* index = app.add_subcommand("index", "compute attribution indices");
  cfg.source.add_options(index);
  index->add_option("--method", cfg.method, "shapley | stv | sii")
      ->check(CLI::IsMember({"shapley", "stv", "sii"}));
  index->add_option("--k", cfg.k, "order of explanation")->check(CLI::PositiveNumber);
  index->add_option("--mode", cfg.mode, "exact | oracle | sample | mom")
      ->check(CLI::IsMember({"exact", "oracle", "sample", "mom"}));
  index->add_flag("--main-effects", cfg.main_effects,
                  "with --method sii --k 2: add main effects (Shapley minus half the pairs)");
  index->add_option("--epsilon", cfg.epsilon, "additive error target for sampling");
  index->add_option("--delta", cfg.delta, "failure probability for sampling");
  index->add_option("--range", cfg.range, "bound r on |δ_S v| for the sample-size rule");
  index->add_option("--samples", cfg.samples, "permutation samples (per group for mom)");
  index->add_option("--groups", cfg.groups, "median-of-means group count (odd)");
  index->add_option("--seed", cfg.seed, "random seed");
  index->add_option("--target", cfg.targets, "sampling target set, e.g. 0;3 (repeatable)");
  index->add_option("--restrict", cfg.restrict_list, "players to keep, e.g. 0-2;5");
  index->add_option("--fill", cfg.fill, "baseline | grand")
      ->check(CLI::IsMember({"baseline", "grand"}));
  index->add_option("--output", cfg.output, "table | csv | json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  add_out(index);
  add_threads(index);

  auto* verify = app.add_subcommand("verify", "executable checks");
  verify->require_subcommand(1);
  auto* axioms = verify->add_subcommand("axioms", "check the five axioms on a game");
  cfg.source.add_options(axioms);
  axioms->add_option("--k", cfg.k, "order of explanation")->check(CLI::PositiveNumber);
  axioms->add_option("--seed", cfg.seed, "seed for auxiliary games and relabellings");
  add_threads(axioms);
  auto* taylor = verify->add_subcommand("taylor", "check the Taylor/Lagrange identity");
  cfg.source.add_options(taylor);
  taylor->add_option("--k", cfg.k, "order of explanation")->check(CLI::PositiveNumber);

  auto* analyze = app.add_subcommand("analyze", "comparative analyses");
  analyze->require_subcommand(1);
  auto* majority = analyze->add_subcommand("majority", "SII divergence sweep on majority games");
  majority->add_option("--min-n", cfg.min_n, "smallest player count")->check(CLI::PositiveNumber);
  majority->add_option("--max-n", cfg.max_n, "largest player count (<= 16)")
      ->check(CLI::PositiveNumber);
  majority->add_option("--gnuplot", cfg.gnuplot_path, "also write a gnuplot script here");
  add_out(majority);
  add_threads(majority);
  auto* crosses = analyze->add_subcommand("crosses", "STI vs SII on crossed linear models");
  crosses->add_option("--c", cfg.cross_c, "cross coefficient");
  crosses->add_option("--product-max-n", cfg.product_max_n, "largest product game")
      ->check(CLI::Range(3, 24));
  add_out(crosses);

  auto* aggregate = app.add_subcommand("aggregate", "rank sets by STI aggregated over games");
  aggregate->add_option("--builtin", cfg.agg_builtin, "built-in game (repeatable)");
  aggregate->add_option("--tabular", cfg.agg_tabular, "tabular game file (repeatable)");
  aggregate->add_option("--mobius", cfg.agg_mobius, "Mobius game file (repeatable)");
  aggregate->add_option("--k", cfg.k, "order of explanation")->check(CLI::PositiveNumber);
  aggregate->add_option("--aggregation", cfg.aggregation, "mean | mean-abs")
      ->check(CLI::IsMember({"mean", "mean-abs"}));
  aggregate->add_option("--samples", cfg.samples, "use sampling with this many permutations");
  aggregate->add_option("--seed", cfg.seed, "seed when sampling");
  add_out(aggregate);
  add_threads(aggregate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "interax: usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (emit->parsed()) {
      const Game game = cfg.source.load();
      const auto doc = cfg.emit_format == "tabular" ? tabular_json(game)
                                                    : mobius_json(mobius_transform(game));
      detail::write_output(cfg, doc.dump() + "\n", out);
    } else if (index->parsed()) {
      const Game game = detail::apply_restriction(cfg, cfg.source.load());
      detail::write_output(cfg, detail::render(cfg, detail::compute_index(cfg, game, err)),
                           out);
    } else if (axioms->parsed()) {
      const Game game = cfg.source.load();
      const std::uint64_t seed = detail::resolve_seed(cfg, err);
      const auto checks = check_all_axioms(game, cfg.k, seed, ExactOptions{cfg.threads});
      bool ok = true;
      char line[200];
      for (const auto& c : checks) {
        std::snprintf(line, sizeof line, "%-26s %s  max_deviation=%.3g tolerance=%.3g\n",
                      c.name.c_str(), c.passed ? "PASS" : "FAIL", c.max_deviation,
                      c.tolerance);
        out << line;
        ok = ok && c.passed;
      }
      const double residual = efficiency_residual(stv_exact(game, cfg.k), game);
      std::snprintf(line, sizeof line, "efficiency residual        %.3g\nseed %llu\n", residual,
                    static_cast<unsigned long long>(seed));
      out << line;
      return ok ? kExitOk : kExitDomain;
    } else if (taylor->parsed()) {
      const auto r = taylor_identity_check(cfg.source.load(), cfg.k);
      char line[256];
      std::snprintf(line, sizeof line,
                    "k=%d lhs=%.17g rhs=%.17g rhs_quadrature=%.17g tolerance=%.3g\n"
                    "analytic %s\nquadrature %s\n",
                    r.k, r.lhs, r.rhs, r.rhs_quadrature, r.tolerance,
                    r.passed ? "PASS" : "FAIL", r.quadrature_passed ? "PASS" : "FAIL");
      out << line;
      return r.passed && r.quadrature_passed ? kExitOk : kExitDomain;
    } else if (majority->parsed()) {
      const auto rows = majority_sweep(cfg.min_n, cfg.max_n, ExactOptions{cfg.threads});
      detail::write_output(cfg, sweep_csv(rows), out);
      if (!cfg.gnuplot_path.empty()) {
        std::ofstream f(cfg.gnuplot_path);
        if (!f) throw Error("cannot write " + cfg.gnuplot_path);
        f << sweep_gnuplot_script(cfg.out_path.empty() ? "sweep.csv" : cfg.out_path);
      }
    } else if (crosses->parsed()) {
      detail::write_output(cfg, cross_comparison_csv(cross_comparison(cfg.cross_c, 3,
                                                                       cfg.product_max_n)),
                           out);
    } else if (aggregate->parsed()) {
      std::vector<Game> games;
      for (const auto& s : cfg.agg_builtin) games.push_back(parse_builtin(s));
      for (const auto& p : cfg.agg_tabular) games.push_back(load_tabular(p));
      for (const auto& p : cfg.agg_mobius) games.push_back(load_mobius(p));
      if (games.empty()) {
        err << "interax: usage error: aggregate needs at least one game\n";
        return kExitUsage;
      }
      std::optional<SamplingPlan> plan;
      if (cfg.samples) {
        plan.emplace();
        plan->samples = cfg.samples;
        plan->seed = detail::resolve_seed(cfg, err);
      }
      const auto ranking = aggregate_crosses(
          games, cfg.k,
          cfg.aggregation == "mean" ? Aggregation::kMean : Aggregation::kMeanAbs, plan,
          cfg.threads);
      detail::write_output(cfg, ranking_csv(ranking), out);
    }
  } catch (const CLI::RequiredError& e) {
    err << "interax: usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "interax: error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "interax: error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace interax::cli
