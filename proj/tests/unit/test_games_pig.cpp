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

#include <catch2/catch_amalgamated.hpp>
#include <map>
#include <set>

#include "mcms/games/pig.hpp"

namespace mcms {
namespace {

Pig::State pig_state(int s1, int s2, int t, Player act) {
  Pig::State s;
  s.score1 = static_cast<std::uint8_t>(s1);
  s.score2 = static_cast<std::uint8_t>(s2);
  s.turn_total = static_cast<std::uint8_t>(t);
  s.to_act = act;
  return s;
}

TEST_CASE("the dice table is the 21 unordered pairs of two dice", "[pig]") {
  const auto& pairs = Pig::dice_pairs();
  REQUIRE(pairs.size() == 21);
  double total = 0.0;
  std::set<std::pair<int, int>> seen;
  for (const auto& d : pairs) {
    REQUIRE(d.a >= 1);
    REQUIRE(d.b >= d.a);
    REQUIRE(d.b <= 6);
    REQUIRE(d.p == (d.a == d.b ? 1.0 : 2.0) / 36.0);
    seen.insert({d.a, d.b});
    total += d.p;
  }
  REQUIRE(seen.size() == 21);
  REQUIRE(total == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("roll outcomes follow the jeopardy rules", "[pig]") {
  const auto s = pig_state(30, 40, 12, Player::kOne);

  // Find outcome ids for a double 1, a single 1, and a plain (2,3).
  int id11 = -1, id1x = -1, id23 = -1;
  const auto& pairs = Pig::dice_pairs();
  for (int i = 0; i < 21; ++i) {
    if (pairs[i].a == 1 && pairs[i].b == 1) id11 = i;
    if (pairs[i].a == 1 && pairs[i].b == 4) id1x = i;
    if (pairs[i].a == 2 && pairs[i].b == 3) id23 = i;
  }

  const auto wiped = Pig::apply(s, Pig::Action::kRoll, id11);
  REQUIRE(wiped.score1 == 0);  // double 1: banked score gone
  REQUIRE(wiped.turn_total == 0);
  REQUIRE(wiped.to_act == Player::kTwo);

  const auto lost = Pig::apply(s, Pig::Action::kRoll, id1x);
  REQUIRE(lost.score1 == 30);  // single 1: only the turn total gone
  REQUIRE(lost.turn_total == 0);
  REQUIRE(lost.to_act == Player::kTwo);

  const auto grew = Pig::apply(s, Pig::Action::kRoll, id23);
  REQUIRE(grew.score1 == 30);
  REQUIRE(grew.turn_total == 17);  // 12 + 2 + 3, same player keeps rolling
  REQUIRE(grew.to_act == Player::kOne);

  // The turn total clamps so score + total never exceeds the goal; any
  // clamped state is a certain win on "stop", so values are unaffected.
  const auto capped =
      Pig::apply(pig_state(90, 0, 8, Player::kOne), Pig::Action::kRoll, id23);
  REQUIRE(capped.turn_total == 10);
}

TEST_CASE("stop banks the turn total and can win", "[pig]") {
  const auto passed =
      Pig::apply(pig_state(30, 40, 12, Player::kTwo), Pig::Action::kStop, 0);
  REQUIRE(passed.score2 == 52);
  REQUIRE(passed.turn_total == 0);
  REQUIRE(passed.to_act == Player::kOne);
  REQUIRE_FALSE(Pig::is_terminal(passed));

  const auto won =
      Pig::apply(pig_state(94, 12, 6, Player::kOne), Pig::Action::kStop, 0);
  REQUIRE(Pig::is_terminal(won));
  REQUIRE(Pig::utility1(won) == 100.0);

  const auto lost_game =
      Pig::apply(pig_state(12, 95, 11, Player::kTwo), Pig::Action::kStop, 0);
  REQUIRE(Pig::is_terminal(lost_game));
  REQUIRE(Pig::utility1(lost_game) == -100.0);
}

TEST_CASE("both actions are always legal and stop is deterministic", "[pig]") {
  std::vector<Pig::Action> actions;
  Pig::legal_actions(pig_state(0, 0, 0, Player::kOne), actions);
  REQUIRE(actions ==
          std::vector<Pig::Action>{Pig::Action::kRoll, Pig::Action::kStop});

  OutcomeSet o;
  Pig::outcome_set(pig_state(5, 5, 5, Player::kOne), Pig::Action::kStop, o);
  REQUIRE(o.size() == 1);
  REQUIRE(o[0].p == 1.0);
  o.clear();
  Pig::outcome_set(pig_state(5, 5, 5, Player::kOne), Pig::Action::kRoll, o);
  REQUIRE(o.size() == 21);
}

TEST_CASE("state keys are injective over plausible states", "[pig]") {
  std::map<std::uint64_t, Pig::State> seen;
  for (int s1 = 0; s1 < 100; s1 += 7) {
    for (int s2 = 0; s2 < 100; s2 += 7) {
      for (int t = 0; t + s1 < 100; t += 5) {
        for (Player p : {Player::kOne, Player::kTwo}) {
          const auto s = pig_state(s1, s2, t, p);
          const auto key = Pig::state_key(s);
          auto [it, fresh] = seen.insert({key, s});
          REQUIRE(fresh);
        }
      }
    }
  }
}

TEST_CASE("the evaluation is antisymmetric under role swap", "[pig]") {
  for (int s1 : {0, 10, 44, 91}) {
    for (int s2 : {0, 5, 60}) {
      for (int t : {0, 7, 9}) {
        const auto a = pig_state(s1, s2, t, Player::kOne);
        const auto b = pig_state(s2, s1, t, Player::kTwo);
        REQUIRE(Pig::evaluate(a) == -Pig::evaluate(b));
      }
    }
  }
}

}  // namespace
}  // namespace mcms
