// Copyright 2026 the mcms authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command-line front end: oracle solving, estimator statistics, tournaments,
// elimination tuning, concentration-bound checks, and scripted games.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcms/games/cant_stop.hpp"
#include "mcms/games/ewn.hpp"
#include "mcms/games/pig.hpp"
#include "mcms/games/ra.hpp"
#include "mcms/harness/match.hpp"
#include "mcms/harness/theorem.hpp"
#include "mcms/harness/tune.hpp"
#include "mcms/oracle/stats.hpp"

namespace {

using nlohmann::json;

template <class Fn>
int with_game(const std::string& name, Fn&& fn) {
  if (name == "pig") return fn.template operator()<mcms::Pig>();
  if (name == "ewn") return fn.template operator()<mcms::Ewn>();
  if (name == "cantstop") return fn.template operator()<mcms::CantStop>();
  if (name == "ra") return fn.template operator()<mcms::Ra>();
  std::cerr << "unknown game '" << name
            << "' (expected pig, ewn, cantstop, or ra)\n";
  return 2;
}

mcms::DepthBudget make_budget(std::uint64_t nodes, std::uint64_t ms) {
  return ms > 0 ? mcms::DepthBudget::millis(ms)
                : mcms::DepthBudget::nodes(nodes);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

std::filesystem::path ensure_out(const std::string& out) {
  std::filesystem::path dir = out.empty() ? "." : out;
  std::filesystem::create_directories(dir);
  return dir;
}

// Loads the oracle table, solving and caching it on first use.
mcms::PigOracle load_or_solve_oracle(const std::string& path) {
  if (auto o = mcms::PigOracle::load(path)) {
    std::fprintf(stderr, "oracle: loaded %s (reachable=%zu residual=%.3g)\n",
                 path.c_str(), o->info().reachable, o->info().residual);
    return std::move(*o);
  }
  std::fprintf(stderr, "oracle: solving pig (first run takes a few seconds)\n");
  mcms::PigOracle o = mcms::PigOracle::solve();
  if (!o.save(path)) {
    std::fprintf(stderr, "oracle: warning: could not cache table at %s\n",
                 path.c_str());
  }
  return o;
}

json budget_json(const mcms::DepthBudget& b) {
  json j;
  if (b.mode == mcms::DepthBudget::Mode::kWallClock) {
    j["mode"] = "ms";
    j["limit"] = b.limit;
  } else if (b.limit == std::numeric_limits<std::uint64_t>::max()) {
    j["mode"] = "depth";
    j["limit"] = b.max_depth;
  } else {
    j["mode"] = "nodes";
    j["limit"] = b.limit;
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic game-tree search engines and experiment harness"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file mirroring the flags");

  std::string game = "pig";
  std::string engine_a = "exp";
  std::string engine_b = "expss";
  std::string engines_csv = "exp,star1,star2,expss,star1ss,star2ss,uct";
  std::string grid_csv;
  std::string out_dir;
  std::string oracle_path = "pig_oracle.bin";
  std::string method = "jacobi";
  std::uint64_t budget_nodes = 20000;
  std::uint64_t budget_ms = 0;
  std::uint64_t seed = 1;
  int matches = 500;
  int workers = 1;
  int states = 200;
  int runs = 20;
  int trials = 1000;
  int depth = 1;
  double tol = 1e-11;
  std::string widths_csv = "2,5,10,20,40,80";
  std::string lambdas_csv = "20,40,60,80,100";

  auto add_budget = [&](CLI::App* cmd) {
    cmd->add_option("--budget-nodes", budget_nodes,
                    "node budget per move (deterministic, default)");
    cmd->add_option("--budget-ms", budget_ms,
                    "wall-clock budget per move, overrides --budget-nodes");
  };
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "master seed");
    cmd->add_option("--out", out_dir, "output directory");
  };

  CLI::App* solve = app.add_subcommand("solve-pig", "value-iterate pig");
  solve->add_option("--method", method, "jacobi or gs");
  solve->add_option("--tol", tol, "residual tolerance");
  solve->add_option("--oracle", oracle_path, "table output path");
  solve->add_option("--out", out_dir, "output directory");

  CLI::App* stats = app.add_subcommand(
      "stats", "estimator error statistics against the pig table");
  stats->add_option("--engines", engines_csv, "comma-separated engine specs");
  stats->add_option("--states", states, "number of sampled states");
  stats->add_option("--runs", runs, "runs per state");
  stats->add_option("--oracle", oracle_path, "oracle table path");
  add_budget(stats);
  add_common(stats);

  CLI::App* tmt = app.add_subcommand("tournament", "seat-swapped matches");
  tmt->add_option("--game", game, "pig, ewn, cantstop, or ra");
  tmt->add_option("--engine-a", engine_a, "left engine spec");
  tmt->add_option("--engine-b", engine_b, "right engine spec");
  tmt->add_option("--matches", matches, "matches per pairing (2 games each)");
  tmt->add_option("--workers", workers, "worker threads");
  add_budget(tmt);
  add_common(tmt);

  CLI::App* tune = app.add_subcommand("tune", "single-elimination tuning");
  tune->add_option("--game", game, "pig, ewn, cantstop, or ra");
  tune->add_option("--grid", grid_csv,
                   "semicolon-separated engine specs, bracket order")
      ->required();
  tune->add_option("--matches", matches, "matches per pairing");
  tune->add_option("--workers", workers, "worker threads");
  add_budget(tune);
  add_common(tune);

  CLI::App* thm = app.add_subcommand(
      "theorem", "empirical coverage of the sampling accuracy bound");
  thm->add_option("--states", states, "states sampled from the pig table");
  thm->add_option("--trials", trials, "sampling trials per state");
  thm->add_option("--widths", widths_csv, "comma-separated sample widths");
  thm->add_option("--lambdas", lambdas_csv, "comma-separated accuracy radii");
  thm->add_option("--depth", depth, "search depth (0..2)");
  thm->add_option("--oracle", oracle_path, "oracle table path");
  add_common(thm);

  CLI::App* play = app.add_subcommand("play", "one scripted game with a log");
  play->add_option("--game", game, "pig, ewn, cantstop, or ra");
  play->add_option("--engine-a", engine_a, "player 1 engine spec");
  play->add_option("--engine-b", engine_b, "player 2 engine spec");
  add_budget(play);
  add_common(play);

  CLI11_PARSE(app, argc, argv);

  auto split = [](const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t next = text.find(sep, pos);
      if (next == std::string::npos) next = text.size();
      if (next > pos) parts.push_back(text.substr(pos, next - pos));
      pos = next + 1;
    }
    return parts;
  };

  try {
    const auto t0 = std::chrono::steady_clock::now();
    const mcms::DepthBudget budget = make_budget(budget_nodes, budget_ms);
    const auto dir = ensure_out(out_dir);

    if (*solve) {
      const auto m = method == "gs" ? mcms::PigOracle::Method::kGaussSeidel
                                    : mcms::PigOracle::Method::kJacobi;
      mcms::PigOracle oracle = mcms::PigOracle::solve(m, tol);
      if (!oracle.save(oracle_path)) {
        std::cerr << "cannot write " << oracle_path << "\n";
        return 1;
      }
      std::printf("reachable states: %zu\n", oracle.info().reachable);
      std::printf("sweeps: %d\n", oracle.info().sweeps);
      std::printf("residual: %.6e\n", oracle.info().residual);
      std::printf("value of the opening state: %.12f\n",
                  oracle.value(mcms::Pig::initial_state()));
      std::printf("table: %s\n", oracle_path.c_str());
      return 0;
    }

    if (*stats) {
      mcms::PigOracle oracle = load_or_solve_oracle(oracle_path);
      const auto specs = split(engines_csv, ',');
      const mcms::StatsReport rep = mcms::pig_estimator_stats(
          oracle, specs, states, runs, budget, seed);
      const std::string csv = mcms::stats_csv(rep);
      write_file(dir / "stats.csv", csv);
      std::fputs(csv.c_str(), stdout);
      json meta;
      meta["command"] = "stats";
      meta["engines"] = specs;
      meta["states"] = states;
      meta["runs"] = runs;
      meta["budget"] = budget_json(budget);
      meta["seed"] = seed;
      meta["outputs"] = {"stats.csv"};
      meta["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
      write_file(dir / "run.json", meta.dump(2) + "\n");
      return 0;
    }

    if (*tmt) {
      return with_game(game, [&]<class G>() {
        mcms::TournamentConfig cfg;
        cfg.pairings = {mcms::Pairing{engine_a, engine_b}};
        cfg.matches = matches;
        cfg.budget = budget;
        cfg.master_seed = seed;
        cfg.workers = workers;
        const mcms::TournamentReport rep = mcms::run_tournament<G>(cfg);
        const std::string csv = mcms::tournament_csv(rep);
        write_file(dir / "tournament.csv", csv);
        write_file(dir / "matches.csv", mcms::matches_csv(rep));
        std::fputs(csv.c_str(), stdout);
        json meta;
        meta["command"] = "tournament";
        meta["game"] = game;
        meta["engine_a"] = engine_a;
        meta["engine_b"] = engine_b;
        meta["matches"] = matches;
        meta["budget"] = budget_json(budget);
        meta["seed"] = seed;
        meta["workers"] = workers;
        meta["outputs"] = {"tournament.csv", "matches.csv"};
        meta["wall_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
        write_file(dir / "run.json", meta.dump(2) + "\n");
        return 0;
      });
    }

    if (*tune) {
      return with_game(game, [&]<class G>() {
        const auto grid = split(grid_csv, ';');
        const mcms::TuneResult res = mcms::tune_elimination<G>(
            grid, matches, budget, seed, workers);
        write_file(dir / "bracket.txt", res.log);
        std::fputs(res.log.c_str(), stdout);
        json meta;
        meta["command"] = "tune";
        meta["game"] = game;
        meta["grid"] = grid;
        meta["matches"] = matches;
        meta["budget"] = budget_json(budget);
        meta["seed"] = seed;
        meta["winner"] = res.winner;
        meta["outputs"] = {"bracket.txt"};
        write_file(dir / "run.json", meta.dump(2) + "\n");
        return 0;
      });
    }

    if (*thm) {
      mcms::PigOracle oracle = load_or_solve_oracle(oracle_path);
      mcms::TheoremCheckConfig cfg;
      cfg.states = states;
      cfg.trials = trials;
      cfg.depth = depth;
      cfg.seed = seed;
      cfg.widths.clear();
      for (const auto& w : split(widths_csv, ','))
        cfg.widths.push_back(std::stoi(w));
      cfg.lambdas.clear();
      for (const auto& l : split(lambdas_csv, ','))
        cfg.lambdas.push_back(std::stod(l));
      const mcms::TheoremReport rep = mcms::check_theorem(oracle, cfg);
      const std::string csv = mcms::theorem_csv(rep);
      write_file(dir / "theorem.csv", csv);
      std::fputs(csv.c_str(), stdout);
      for (const auto& v : rep.monotonicity_violations) {
        std::printf("monotonicity violation: %s\n", v.c_str());
      }
      if (rep.monotonicity_violations.empty()) {
        std::printf("coverage is non-decreasing in the sample width\n");
      }
      json meta;
      meta["command"] = "theorem";
      meta["states"] = states;
      meta["trials"] = trials;
      meta["depth"] = depth;
      meta["seed"] = seed;
      meta["outputs"] = {"theorem.csv"};
      write_file(dir / "run.json", meta.dump(2) + "\n");
      return 0;
    }

    if (*play) {
      return with_game(game, [&]<class G>() {
        auto ea = mcms::make_engine<G>(engine_a);
        auto eb = mcms::make_engine<G>(engine_b);
        ea->new_game(mcms::mix64(seed, 1));
        eb->new_game(mcms::mix64(seed, 2));
        mcms::Rng chance[2] = {mcms::Rng(mcms::mix64(seed, 0xD1CE, 1)),
                               mcms::Rng(mcms::mix64(seed, 0xD1CE, 2))};
        typename G::State s = G::initial_state();
        std::string log = "game: " + G::name() + "\nplayer 1: " + engine_a +
                          "\nplayer 2: " + engine_b + "\nseed: " +
                          std::to_string(seed) + "\n\n";
        int ply = 0;
        std::vector<typename G::Action> actions;
        mcms::OutcomeSet outcomes;
        while (!G::is_terminal(s)) {
          const mcms::Player actor = G::player_to_act(s);
          const int idx = actor == mcms::Player::kOne ? 0 : 1;
          actions.clear();
          G::legal_actions(s, actions);
          typename G::Action act = actions[0];
          std::string note = "(chance)";
          if (!G::is_chance_pending(s)) {
            auto& engine = idx == 0 ? ea : eb;
            const auto res = engine->choose(s, budget, ply);
            act = actions[res.best_action_index];
            note = "value " + mcms::csv_double(res.value) + ", depth " +
                   std::to_string(res.completed_depth) + ", nodes " +
                   std::to_string(res.nodes_visited);
          }
          outcomes.clear();
          G::outcome_set(s, act, outcomes);
          const std::uint64_t oid =
              mcms::sample_outcome<G>(outcomes, chance[idx]);
          log += "ply " + std::to_string(ply) + " p" +
                 std::to_string(idx + 1) + ": " +
                 G::action_to_string(s, act) + "  [" + note + "]\n";
          s = G::apply(s, act, oid);
          ++ply;
        }
        log += "\nfinal: " + G::to_string(s) + "\n";
        log += "utility for player 1: " +
               mcms::csv_double(G::utility1(s)) + "\n";
        std::fputs(log.c_str(), stdout);
        if (!out_dir.empty()) write_file(dir / "game.txt", log);
        return 0;
      });
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
