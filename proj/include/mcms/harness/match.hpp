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

#ifndef MCMS_HARNESS_MATCH_HPP_
#define MCMS_HARNESS_MATCH_HPP_

#include <atomic>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "mcms/harness/csv.hpp"
#include "mcms/harness/engine.hpp"

namespace mcms {

// One match = two games with seats swapped, sharing one match seed.
//
// Chance events are owned by the driver, not the engines: each seat has its
// own dice stream derived from (match_seed, seat), reset per game, so both
// engines face identical chance when occupying the same seat. Engine seeds
// and per-move salts are likewise keyed by seat and ply only. Consequently
// an engine paired with itself replays the identical transcript in game two
// and scores exactly 50% of every match, while differing engines still share
// dice luck across the swap.
struct MatchRecord {
  std::uint64_t match_seed = 0;
  double a_points = 0.0;      // left engine's points out of 2
  int games_completed = 0;
  int plies = 0;              // total across both games
  bool voided = false;
  std::string void_reason;
};

template <Game G>
MatchRecord play_match(Engine<G>& a, Engine<G>& b, const DepthBudget& budget,
                       std::uint64_t match_seed, int ply_cap = 100000) {
  MatchRecord rec;
  rec.match_seed = match_seed;
  for (int g = 0; g < 2; ++g) {
    Engine<G>* seat[3] = {nullptr, g == 0 ? &a : &b, g == 0 ? &b : &a};
    try {
      seat[1]->new_game(mix64(match_seed, 1));
      seat[2]->new_game(mix64(match_seed, 2));
      Rng chance[2] = {Rng(mix64(match_seed, 0xD1CE, 1)),
                       Rng(mix64(match_seed, 0xD1CE, 2))};
      typename G::State s = G::initial_state();
      std::vector<typename G::Action> actions;
      OutcomeSet outcomes;
      int ply = 0;
      while (!G::is_terminal(s)) {
        MCMS_CHECK(ply < ply_cap, "ply cap exceeded");
        const Player actor = G::player_to_act(s);
        const int seat_idx = actor == Player::kOne ? 1 : 2;
        actions.clear();
        G::legal_actions(s, actions);
        typename G::Action act = actions[0];
        if (!G::is_chance_pending(s)) {
          const auto res = seat[seat_idx]->choose(
              s, budget, static_cast<std::uint64_t>(ply));
          MCMS_CHECK(res.best_action_index >= 0 &&
                         res.best_action_index <
                             static_cast<int>(actions.size()),
                     "engine returned an illegal action index");
          act = actions[res.best_action_index];
        }
        outcomes.clear();
        G::outcome_set(s, act, outcomes);
        const std::uint64_t oid =
            sample_outcome<G>(outcomes, chance[seat_idx - 1]);
        s = G::apply(s, act, oid);
        ++ply;
      }
      const Value u = G::utility1(s);
      const double p1 = u > 0 ? 1.0 : (u < 0 ? 0.0 : 0.5);
      rec.a_points += (g == 0) ? p1 : 1.0 - p1;
      rec.games_completed += 1;
      rec.plies += ply;
    } catch (const std::exception& e) {
      rec.voided = true;
      rec.void_reason = e.what();
      return rec;
    }
  }
  return rec;
}

struct Pairing {
  std::string engine_a;
  std::string engine_b;
};

struct TournamentConfig {
  std::vector<Pairing> pairings;
  int matches = 500;
  DepthBudget budget = DepthBudget::nodes(20000);
  std::uint64_t master_seed = 1;
  int workers = 1;  // bounded worker pool; results aggregated in seed order
  int ply_cap = 100000;
};

struct PairingReport {
  Pairing pairing;
  int matches = 0;
  int games = 0;          // completed games
  int voided = 0;         // voided matches
  double a_points = 0.0;
  double win_rate = 0.0;  // left engine, in [0, 1]
  double ci95 = 0.0;      // normal-approximation half-width
  std::vector<MatchRecord> records;
};

struct TournamentReport {
  TournamentConfig config;
  std::string game;
  std::vector<PairingReport> rows;
};

inline double ci95_halfwidth(double p_hat, int n) {
  if (n <= 0) return 0.0;
  return 1.96 * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n));
}

// Plays every pairing; each worker job owns its engines and RNG streams, and
// records land at their match index, so reports are independent of worker
// count and scheduling.
template <Game G>
TournamentReport run_tournament(const TournamentConfig& cfg) {
  MCMS_CHECK(!cfg.pairings.empty(), "tournament needs at least one pairing");
  MCMS_CHECK(cfg.matches >= 1, "tournament needs at least one match");
  TournamentReport report;
  report.config = cfg;
  report.game = G::name();
  for (std::size_t pi = 0; pi < cfg.pairings.size(); ++pi) {
    const Pairing& pairing = cfg.pairings[pi];
    const EngineSpec spec_a = parse_engine_spec(pairing.engine_a);
    const EngineSpec spec_b = parse_engine_spec(pairing.engine_b);
    std::vector<MatchRecord> records(cfg.matches);
    const int workers =
        std::max(1, std::min(cfg.workers, cfg.matches));
    std::atomic<int> next{0};
    auto work = [&]() {
      auto ea = make_engine<G>(spec_a);
      auto eb = make_engine<G>(spec_b);
      while (true) {
        const int m = next.fetch_add(1);
        if (m >= cfg.matches) break;
        const std::uint64_t match_seed =
            mix64(cfg.master_seed, static_cast<std::uint64_t>(pi + 1),
                  static_cast<std::uint64_t>(m + 1));
        records[m] =
            play_match<G>(*ea, *eb, cfg.budget, match_seed, cfg.ply_cap);
      }
    };
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }

    PairingReport row;
    row.pairing = pairing;
    row.matches = cfg.matches;
    for (const MatchRecord& r : records) {
      if (r.voided) {
        row.voided += 1;
        continue;
      }
      row.games += r.games_completed;
      row.a_points += r.a_points;
    }
    MCMS_CHECK(row.games > 0, "tournament pairing completed zero games");
    row.win_rate = row.a_points / static_cast<double>(row.games);
    row.ci95 = ci95_halfwidth(row.win_rate, row.games);
    row.records = std::move(records);
    report.rows.push_back(std::move(row));
  }
  return report;
}

// Schema mcms.tournament.v1: one row per pairing.
inline std::string tournament_csv(const TournamentReport& r) {
  std::string out =
      "schema,game,engine_a,engine_b,budget,master_seed,matches,games,voided,"
      "a_points,win_rate,ci95_halfwidth\n";
  for (const PairingReport& row : r.rows) {
    out += "mcms.tournament.v1," + csv_field(r.game) + "," +
           csv_field(row.pairing.engine_a) + "," +
           csv_field(row.pairing.engine_b) + "," +
           budget_to_string(r.config.budget) + "," +
           csv_u64(r.config.master_seed) + "," + csv_int(row.matches) + "," +
           csv_int(row.games) + "," + csv_int(row.voided) + "," +
           csv_double(row.a_points) + "," + csv_double(row.win_rate) + "," +
           csv_double(row.ci95) + "\n";
  }
  return out;
}

// Schema mcms.matches.v1: one row per match.
inline std::string matches_csv(const TournamentReport& r) {
  std::string out =
      "schema,game,engine_a,engine_b,match_index,match_seed,a_points,"
      "games_completed,plies,voided,void_reason\n";
  for (const PairingReport& row : r.rows) {
    for (std::size_t m = 0; m < row.records.size(); ++m) {
      const MatchRecord& rec = row.records[m];
      out += "mcms.matches.v1," + csv_field(r.game) + "," +
             csv_field(row.pairing.engine_a) + "," +
             csv_field(row.pairing.engine_b) + "," +
             csv_int(static_cast<long long>(m)) + "," +
             csv_u64(rec.match_seed) + "," + csv_double(rec.a_points) + "," +
             csv_int(rec.games_completed) + "," + csv_int(rec.plies) + "," +
             csv_int(rec.voided ? 1 : 0) + "," + csv_field(rec.void_reason) +
             "\n";
    }
  }
  return out;
}

}  // namespace mcms

#endif  // MCMS_HARNESS_MATCH_HPP_
