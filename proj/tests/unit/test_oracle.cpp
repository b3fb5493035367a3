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

// The exact Pig solution: convergence, fixed-point identities, the greedy
// policy, persistence, and the estimator-statistics pipeline built on it.

#include <cmath>
#include <cstdio>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "mcms/oracle/pig_values.hpp"
#include "mcms/oracle/stats.hpp"
#include "oracle_fixture.hpp"

namespace mcms {
namespace {

const PigOracle& oracle() { return shared_pig_oracle(); }

TEST_CASE("value iteration converges on the reachable space",
          "[oracle][solve]") {
  const auto& o = oracle();
  REQUIRE(o.info().residual < 1e-10);
  REQUIRE(o.info().sweeps > 10);
  // Frozen count for this state encoding: scores 0..99 x turn totals
  // (clamped so score + total <= 100) x two actors, minus unreachable
  // corners. A change here means the reachability rules moved.
  REQUIRE(o.info().reachable == 886192);
  REQUIRE(o.info().reachable < 1000000);
  REQUIRE(o.is_reachable(Pig::initial_state()));

  // Frozen solved value of the opening state (player-1 scale). The first
  // player's roll advantage is worth about 2% of a win.
  REQUIRE(o.value(Pig::initial_state()) ==
          Catch::Approx(3.911778772).margin(1e-6));
}

TEST_CASE("solved values satisfy their own fixed-point equations",
          "[oracle][bellman]") {
  const auto& o = oracle();
  Rng rng(99);
  for (int i = 0; i < 2000; ++i) {
    const Pig::State s = o.sample_reachable(rng);
    const double v = o.value(s);
    REQUIRE(v >= -100.0);
    REQUIRE(v <= 100.0);
    const double qr = o.q_value(s, Pig::Action::kRoll);
    const double qs = o.q_value(s, Pig::Action::kStop);
    const double best = (s.to_act == Player::kOne) ? std::max(qr, qs)
                                                   : std::min(qr, qs);
    // One extra backup may move a value by at most ~the final residual.
    REQUIRE(v == Catch::Approx(best).margin(1e-7));

    // The game is symmetric in the players: swapping seats negates values.
    Pig::State m = s;
    m.score1 = s.score2;
    m.score2 = s.score1;
    m.to_act = opponent_of(s.to_act);
    REQUIRE(o.is_reachable(m));
    REQUIRE(o.value(m) == Catch::Approx(-v).margin(1e-7));
  }
}

TEST_CASE("greedy policy has zero regret and sane endgame choices",
          "[oracle][policy]") {
  const auto& o = oracle();
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const Pig::State s = o.sample_reachable(rng);
    const auto g = o.greedy_action(s);
    REQUIRE(o.regret(s, g) == 0.0);
    const auto other =
        g == Pig::Action::kRoll ? Pig::Action::kStop : Pig::Action::kRoll;
    REQUIRE(o.regret(s, other) >= 0.0);
  }
  // Holding a winning total, stopping is strictly better than rolling (a
  // roll risks the bank for points the cap discards).
  Pig::State s;
  s.score1 = 95;
  s.turn_total = 5;
  s.to_act = Player::kOne;
  REQUIRE(o.greedy_action(s) == Pig::Action::kStop);
  REQUIRE(o.q_value(s, Pig::Action::kStop) == 100.0);
  REQUIRE(o.regret(s, Pig::Action::kRoll) > 0.0);
}

TEST_CASE("greedy self-play realizes the solved value", "[oracle][selfplay]") {
  // V(initial) = 100 * (2p - 1) under optimal play, so the first player's
  // optimal-vs-optimal win rate is (V + 100) / 200 ~ 0.5196. 4000 games at
  // sigma ~ 0.0079 put a 4-sigma band around it.
  const auto& o = oracle();
  Rng rng(2026);
  OutcomeSet outcomes;
  int p1_wins = 0;
  const int games = 4000;
  for (int g = 0; g < games; ++g) {
    Pig::State s = Pig::initial_state();
    int guard = 0;
    while (!Pig::is_terminal(s)) {
      MCMS_CHECK(++guard < 100000, "greedy self-play failed to terminate");
      const auto a = o.greedy_action(s);
      outcomes.clear();
      Pig::outcome_set(s, a, outcomes);
      s = Pig::apply(s, a, sample_outcome<Pig>(outcomes, rng));
    }
    if (Pig::utility1(s) > 0.0) ++p1_wins;
  }
  const double rate = static_cast<double>(p1_wins) / games;
  const double expected = (o.value(Pig::initial_state()) + 100.0) / 200.0;
  REQUIRE(rate == Catch::Approx(expected).margin(0.032));
}

TEST_CASE("both sweep schemes find the same fixed point", "[oracle][cross]") {
  const auto& o = oracle();
  const auto gs = PigOracle::solve(PigOracle::Method::kGaussSeidel, 1e-10);
  const auto& idx = o.reachable_indices();
  double worst = 0.0;
  for (std::size_t i = 0; i < idx.size(); i += 97) {
    const auto s = PigOracle::state_of(idx[i]);
    worst = std::max(worst, std::fabs(o.value(s) - gs.value(s)));
  }
  REQUIRE(worst < 1e-6);
}

TEST_CASE("the table survives a save/load round trip", "[oracle][io]") {
  const auto& o = oracle();
  const std::string path = "test_pig_oracle_tmp.bin";
  REQUIRE(o.save(path));
  const auto loaded = PigOracle::load(path);
  REQUIRE(loaded.has_value());
  REQUIRE(loaded->info().reachable == o.info().reachable);
  REQUIRE(loaded->info().residual == o.info().residual);
  Rng rng(13);
  for (int i = 0; i < 1000; ++i) {
    const auto s = o.sample_reachable(rng);
    REQUIRE(loaded->value(s) == o.value(s));  // bit-exact through the file
    REQUIRE(loaded->is_reachable(s));
  }
  std::remove(path.c_str());

  SECTION("a damaged file is rejected, not misread") {
    const std::string bad = "test_pig_oracle_bad.bin";
    std::FILE* f = std::fopen(bad.c_str(), "wb");
    REQUIRE(f != nullptr);
    const char junk[16] = "NOTANORACLE....";
    std::fwrite(junk, 1, sizeof(junk), f);
    std::fclose(f);
    REQUIRE_FALSE(PigOracle::load(bad).has_value());
    std::remove(bad.c_str());
    REQUIRE_FALSE(PigOracle::load("no_such_file.bin").has_value());
  }
}

TEST_CASE("collect_states yields distinct reachable decision states",
          "[oracle][collect]") {
  const auto a = collect_states<Pig>(50, 4);
  const auto b = collect_states<Pig>(50, 4);
  REQUIRE(a.size() == 50);
  std::unordered_set<std::uint64_t> keys;
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE_FALSE(Pig::is_terminal(a[i]));
    REQUIRE_FALSE(Pig::is_chance_pending(a[i]));
    REQUIRE(oracle().is_reachable(a[i]));
    REQUIRE(keys.insert(Pig::state_key(a[i])).second);
    REQUIRE(a[i] == b[i]);  // same seed, same order
  }
  const auto c = collect_states<Pig>(50, 5);
  bool same = true;
  for (std::size_t i = 0; i < c.size(); ++i) same = same && (a[i] == c[i]);
  REQUIRE_FALSE(same);
}

TEST_CASE("estimator statistics decompose exactly", "[oracle][stats]") {
  const auto& o = oracle();
  const std::vector<std::string> specs = {"exp", "expss:c=5,seed=3"};
  const auto report =
      pig_estimator_stats(o, specs, /*n_states=*/40, /*runs=*/5,
                          DepthBudget::depth(2), /*seed=*/77);
  REQUIRE(report.rows.size() == 2);
  const auto& exp_row = report.rows[0];
  const auto& ss_row = report.rows[1];
  REQUIRE(exp_row.name == "exp");

  // A deterministic engine repeats itself: zero variance, bias carries all
  // the error. The sampled engine genuinely varies across run seeds.
  // Identical runs leave only accumulation ulps behind (the mean of five
  // equal errors is not bit-equal to the error), so "zero variance" means
  // below any statistically visible scale, not a float literal.
  REQUIRE(exp_row.variance < 1e-20);
  // Per state mse = bias^2 when variance is zero, so across states
  // mean(bias^2) >= mean(|bias|)^2 by Jensen, with equality only if every
  // state had the same error magnitude.
  REQUIRE(exp_row.mse >= exp_row.abs_bias * exp_row.abs_bias);
  REQUIRE(ss_row.variance > 0.0);

  // MSE = variance + bias^2 is algebraic, not approximate.
  REQUIRE(exp_row.max_identity_gap < 1e-12);
  REQUIRE(ss_row.max_identity_gap < 1e-12);
  REQUIRE(exp_row.regret >= 0.0);
  REQUIRE(ss_row.regret >= 0.0);

  SECTION("the report serializes reproducibly") {
    const auto again =
        pig_estimator_stats(o, specs, 40, 5, DepthBudget::depth(2), 77);
    REQUIRE(stats_csv(report) == stats_csv(again));  // byte-identical
    const std::string csv = stats_csv(report);
    REQUIRE(csv.rfind("schema,engine,states,runs,budget,seed,mse,", 0) == 0);
    REQUIRE(csv.find("mcms.stats.v1,exp,40,5,depth=2,77,") !=
            std::string::npos);
  }
}

}  // namespace
}  // namespace mcms
