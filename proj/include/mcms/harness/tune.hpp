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

#ifndef MCMS_HARNESS_TUNE_HPP_
#define MCMS_HARNESS_TUNE_HPP_

#include <string>
#include <vector>

#include "mcms/harness/match.hpp"

namespace mcms {

// Single-elimination parameter tuning: entrants are engine spec strings,
// adjacent entrants are paired each round, pairing winners advance, and odd
// counts give the last entrant a bye. An exactly tied pairing is replayed
// once with a fresh seed; if still tied, the lower grid index advances.
struct TuneRound {
  struct Tie {
    std::string a, b;
    double a_points = 0.0;
    double b_points = 0.0;
    bool replayed = false;
    std::string winner;
  };
  std::vector<Tie> pairings;
  std::vector<std::string> advanced;
};

struct TuneResult {
  std::string winner;
  std::vector<TuneRound> rounds;
  std::string log;  // human-readable bracket
};

template <Game G>
TuneResult tune_elimination(const std::vector<std::string>& grid,
                            int matches_per_pairing, const DepthBudget& budget,
                            std::uint64_t master_seed, int workers = 1) {
  MCMS_CHECK(grid.size() >= 2, "tuning grid needs at least two entrants");
  TuneResult result;
  std::vector<std::string> alive = grid;
  int round_idx = 0;
  while (alive.size() > 1) {
    TuneRound round;
    std::vector<std::string> next;
    for (std::size_t i = 0; i + 1 < alive.size(); i += 2) {
      TuneRound::Tie rec;
      rec.a = alive[i];
      rec.b = alive[i + 1];
      auto play = [&](std::uint64_t seed_salt) {
        TournamentConfig cfg;
        cfg.pairings = {Pairing{rec.a, rec.b}};
        cfg.matches = matches_per_pairing;
        cfg.budget = budget;
        cfg.master_seed =
            mix64(master_seed, static_cast<std::uint64_t>(round_idx + 1),
                  static_cast<std::uint64_t>(i + 1), seed_salt);
        cfg.workers = workers;
        const TournamentReport rep = run_tournament<G>(cfg);
        rec.a_points = rep.rows[0].a_points;
        rec.b_points = rep.rows[0].games - rep.rows[0].a_points;
      };
      play(0);
      if (rec.a_points == rec.b_points) {
        rec.replayed = true;
        play(1);
      }
      rec.winner = rec.b_points > rec.a_points ? rec.b : rec.a;
      result.log += "round " + csv_int(round_idx + 1) + ": " + rec.a + " [" +
                    csv_double(rec.a_points) + "] vs " + rec.b + " [" +
                    csv_double(rec.b_points) + "]" +
                    (rec.replayed ? " (replayed)" : "") + " -> " + rec.winner +
                    "\n";
      next.push_back(rec.winner);
      round.pairings.push_back(rec);
    }
    if (alive.size() % 2 == 1) {
      next.push_back(alive.back());
      result.log += "round " + csv_int(round_idx + 1) + ": " + alive.back() +
                    " advances on a bye\n";
    }
    round.advanced = next;
    result.rounds.push_back(std::move(round));
    alive = std::move(next);
    ++round_idx;
  }
  result.winner = alive[0];
  result.log += "winner: " + result.winner + "\n";
  return result;
}

}  // namespace mcms

#endif  // MCMS_HARNESS_TUNE_HPP_
