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

#ifndef MCMS_GAMES_PIG_HPP_
#define MCMS_GAMES_PIG_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mcms/core/game.hpp"

namespace mcms {

// Two-dice Pig ("Pig Out" / two-dice jeopardy variant), first to 100.
// On their turn a player repeatedly rolls two dice or stops:
//  * no 1s rolled: the dice sum joins the turn total, same player acts again;
//  * exactly one 1: the turn total is lost, the turn passes;
//  * double 1s: the player's whole banked score is lost too, turn passes;
//  * stop: the turn total banks into the score; reaching 100 wins.
//
// Turn totals are clamped so score + turn_total never exceeds 100. Any state
// at that clamp is already a certain win for the player to act (stop wins on
// the spot), so the clamp changes no state value and no action value; it just
// keeps the state space finite and small.
//
// Rolling never ends the game, so terminal states arise from "stop" only.
struct Pig {
  static constexpr int kGoal = 100;

  enum class Phase : std::uint8_t { kDecision = 0 };

  struct State {
    std::uint8_t score1 = 0;      // banked score, player 1
    std::uint8_t score2 = 0;      // banked score, player 2
    std::uint8_t turn_total = 0;  // unbanked points of the player to act
    Player to_act = Player::kOne;
    Phase phase = Phase::kDecision;  // Pig has no chance-pending states

    bool operator==(const State& o) const {
      return score1 == o.score1 && score2 == o.score2 &&
             turn_total == o.turn_total && to_act == o.to_act;
    }
  };

  enum class Action : std::uint8_t { kRoll = 0, kStop = 1 };

  // The 21 unordered two-dice outcomes (a <= b), ascending. Doubles have
  // probability 1/36, mixed pairs 2/36.
  struct DicePair {
    std::uint8_t a, b;
    double p;
  };
  static const std::array<DicePair, 21>& dice_pairs() {
    static const std::array<DicePair, 21> table = [] {
      std::array<DicePair, 21> t{};
      int i = 0;
      for (std::uint8_t a = 1; a <= 6; ++a) {
        for (std::uint8_t b = a; b <= 6; ++b) {
          t[i++] = DicePair{a, b, (a == b ? 1.0 : 2.0) / 36.0};
        }
      }
      return t;
    }();
    return table;
  }

  static std::string name() { return "pig"; }
  static ValueBounds bounds() { return ValueBounds{-100.0, +100.0}; }

  static State initial_state() { return State{}; }

  static bool is_terminal(const State& s) {
    return s.score1 >= kGoal || s.score2 >= kGoal;
  }

  static Value utility1(const State& s) {
    MCMS_CHECK(is_terminal(s), "utility1() on non-terminal Pig state");
    return s.score1 >= kGoal ? +100.0 : -100.0;
  }

  static Player player_to_act(const State& s) {
    MCMS_CHECK(!is_terminal(s), "player_to_act() on terminal Pig state");
    return s.to_act;
  }

  static bool is_chance_pending(const State&) { return false; }

  static void legal_actions(const State& s, std::vector<Action>& out) {
    MCMS_CHECK(!is_terminal(s), "legal_actions() on terminal Pig state");
    out.push_back(Action::kRoll);
    out.push_back(Action::kStop);
  }

  static void outcome_set(const State& s, Action a, OutcomeSet& out) {
    MCMS_CHECK(!is_terminal(s), "outcome_set() on terminal Pig state");
    const ValueBounds b = bounds();
    if (a == Action::kStop) {
      out.add(0, 1.0, b);
      return;
    }
    const auto& pairs = dice_pairs();
    for (std::uint64_t i = 0; i < pairs.size(); ++i) {
      out.add(i, pairs[i].p, b);
    }
  }

  static State apply(const State& s, Action a, std::uint64_t outcome) {
    MCMS_CHECK(!is_terminal(s), "apply() on terminal Pig state");
    State n = s;
    const bool p1 = (s.to_act == Player::kOne);
    std::uint8_t& my_score = p1 ? n.score1 : n.score2;
    if (a == Action::kStop) {
      MCMS_CHECK(outcome == 0, "apply(): bad outcome id for stop");
      my_score = static_cast<std::uint8_t>(my_score + s.turn_total);
      n.turn_total = 0;
      if (my_score < kGoal) n.to_act = opponent_of(s.to_act);
      return n;
    }
    MCMS_CHECK(outcome < 21, "apply(): bad outcome id for roll");
    const DicePair d = dice_pairs()[outcome];
    const bool one_a = (d.a == 1), one_b = (d.b == 1);
    if (one_a && one_b) {  // double 1s: lose banked score and turn total
      my_score = 0;
      n.turn_total = 0;
      n.to_act = opponent_of(s.to_act);
    } else if (one_a || one_b) {  // single 1: lose turn total
      n.turn_total = 0;
      n.to_act = opponent_of(s.to_act);
    } else {
      int t = s.turn_total + d.a + d.b;
      const int cap = kGoal - my_score;
      if (t > cap) t = cap;
      n.turn_total = static_cast<std::uint8_t>(t);
    }
    return n;
  }

  // Injective packing: Pig's key doubles as an exact state identity.
  static std::uint64_t state_key(const State& s) {
    return static_cast<std::uint64_t>(s.score1) |
           (static_cast<std::uint64_t>(s.score2) << 8) |
           (static_cast<std::uint64_t>(s.turn_total) << 16) |
           (static_cast<std::uint64_t>(s.to_act == Player::kTwo ? 1 : 0)
            << 24);
  }

  // Heuristic: difference of effective scores, clamped to the utility range.
  // Banked points count in full; the acting player's unbanked turn total
  // counts at half weight, since the pot is still at jeopardy (each further
  // roll forfeits it with probability 11/36) and only a deeper search can
  // price the actual stop/roll tradeoff.
  static constexpr double kPotWeight = 0.5;
  static Value evaluate(const State& s) {
    if (is_terminal(s)) return utility1(s);
    const double eff1 =
        s.score1 + (s.to_act == Player::kOne ? kPotWeight * s.turn_total : 0);
    const double eff2 =
        s.score2 + (s.to_act == Player::kTwo ? kPotWeight * s.turn_total : 0);
    return clamp_value(eff1 - eff2, bounds());
  }

  static std::string to_string(const State& s) {
    std::string r = "pig(s1=" + std::to_string(s.score1) +
                    ",s2=" + std::to_string(s.score2) +
                    ",t=" + std::to_string(s.turn_total) +
                    ",act=" + std::to_string(static_cast<int>(s.to_act)) + ")";
    return r;
  }

  static std::string action_to_string(const State&, Action a) {
    return a == Action::kRoll ? "roll" : "stop";
  }
};

}  // namespace mcms

#endif  // MCMS_GAMES_PIG_HPP_
