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

#ifndef MCMS_GAMES_CANT_STOP_HPP_
#define MCMS_GAMES_CANT_STOP_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "mcms/core/game.hpp"

namespace mcms {

// Can't Stop (Sackson), two players, official column lengths.
//
// Columns 2..12 have lengths 3,5,7,9,11,13,11,9,7,5,3. On a turn the player
// rolls four dice and picks one of the three pairings; if both sums of the
// pairing are playable they must both be advanced, otherwise one playable sum
// is advanced. At most three temporary markers; a roll admitting no play is a
// bust (all temporary progress lost, turn passes). "Stop" banks the markers;
// a column banked at full height is claimed and closed for both players.
// Three claimed columns win. Opposing markers never block a column.
//
// Chance modeling: the roll is an outcome of the preceding "roll" action.
// Bust resolution happens inside apply(), so a bust outcome leads directly to
// the opponent's pre-roll state and post-roll states always admit a play.
struct CantStop {
  static constexpr int kCols = 11;  // sums 2..12 -> index 0..10
  static constexpr std::array<std::uint8_t, kCols> kLen = {3, 5, 7,  9, 11, 13,
                                                           11, 9, 7, 5, 3};
  static constexpr int kMaxMarkers = 3;
  static constexpr int kColsToWin = 3;

  struct State {
    std::uint8_t perm[2][kCols] = {};   // banked progress per player
    std::uint8_t claimed[kCols] = {};   // 0 open, else claiming player (1/2)
    std::int8_t temp_col[kMaxMarkers] = {-1, -1, -1};  // sorted ascending
    std::uint8_t temp_h[kMaxMarkers] = {};
    std::uint8_t temp_n = 0;
    std::uint16_t dice = 0;  // 0: pre-roll, else packed sorted 4-dice + 1
    Player to_act = Player::kOne;

    bool operator==(const State& o) const {
      return std::memcmp(perm, o.perm, sizeof(perm)) == 0 &&
             std::memcmp(claimed, o.claimed, sizeof(claimed)) == 0 &&
             std::memcmp(temp_col, o.temp_col, sizeof(temp_col)) == 0 &&
             std::memcmp(temp_h, o.temp_h, sizeof(temp_h)) == 0 &&
             temp_n == o.temp_n && dice == o.dice && to_act == o.to_act;
    }
  };

  struct Action {
    enum class Kind : std::uint8_t {
      kRoll = 0,
      kStop = 1,
      kPlayBoth = 2,  // advance sums a and b (a <= b)
      kPlayOne = 3,   // advance sum a
    };
    Kind kind = Kind::kRoll;
    std::uint8_t a = 0;
    std::uint8_t b = 0;

    bool operator==(const Action& o) const {
      return kind == o.kind && a == o.a && b == o.b;
    }
  };

  static std::string name() { return "cantstop"; }
  static ValueBounds bounds() { return ValueBounds{-100.0, +100.0}; }

  static State initial_state() { return State{}; }

  static int claims(const State& s, Player p) {
    const std::uint8_t who = (p == Player::kOne) ? 1 : 2;
    int n = 0;
    for (int i = 0; i < kCols; ++i) n += (s.claimed[i] == who);
    return n;
  }

  static bool is_terminal(const State& s) {
    return claims(s, Player::kOne) >= kColsToWin ||
           claims(s, Player::kTwo) >= kColsToWin;
  }

  static Value utility1(const State& s) {
    MCMS_CHECK(is_terminal(s), "utility1() on non-terminal state");
    return claims(s, Player::kOne) >= kColsToWin ? +100.0 : -100.0;
  }

  static Player player_to_act(const State& s) {
    MCMS_CHECK(!is_terminal(s), "player_to_act() on terminal state");
    return s.to_act;
  }

  static bool is_chance_pending(const State&) { return false; }

  // --- dice packing -------------------------------------------------------
  // Packed id of four sorted (ascending) dice, 1-based so 0 means pre-roll.
  static std::uint16_t pack_dice(const std::array<std::uint8_t, 4>& d) {
    return static_cast<std::uint16_t>(1 + (d[0] - 1) + (d[1] - 1) * 6 +
                                      (d[2] - 1) * 36 + (d[3] - 1) * 216);
  }
  static std::array<std::uint8_t, 4> unpack_dice(std::uint16_t id) {
    std::uint16_t x = static_cast<std::uint16_t>(id - 1);
    std::array<std::uint8_t, 4> d;
    d[0] = static_cast<std::uint8_t>(x % 6 + 1);
    d[1] = static_cast<std::uint8_t>(x / 6 % 6 + 1);
    d[2] = static_cast<std::uint8_t>(x / 36 % 6 + 1);
    d[3] = static_cast<std::uint8_t>(x / 216 % 6 + 1);
    return d;
  }

  struct RollOutcome {
    std::uint16_t id;
    double p;
  };
  // The 126 distinct sorted 4-dice combinations, ascending by packed id.
  static const std::vector<RollOutcome>& roll_outcomes() {
    static const std::vector<RollOutcome> table = [] {
      std::vector<RollOutcome> t;
      for (std::uint8_t a = 1; a <= 6; ++a)
        for (std::uint8_t b = a; b <= 6; ++b)
          for (std::uint8_t c = b; c <= 6; ++c)
            for (std::uint8_t d = c; d <= 6; ++d) {
              // number of distinct orderings of the multiset {a,b,c,d}
              std::array<std::uint8_t, 4> v = {a, b, c, d};
              int perms = 24;
              int i = 0;
              while (i < 4) {
                int j = i;
                while (j < 4 && v[j] == v[i]) ++j;
                const int run = j - i;
                for (int k = 2; k <= run; ++k) perms /= k;
                i = j;
              }
              t.push_back(RollOutcome{pack_dice(v), perms / 1296.0});
            }
      std::sort(t.begin(), t.end(),
                [](const RollOutcome& x, const RollOutcome& y) {
                  return x.id < y.id;
                });
      return t;
    }();
    return table;
  }

  // --- marker helpers -----------------------------------------------------
  static int temp_index(const State& s, int col_idx) {
    for (int i = 0; i < s.temp_n; ++i) {
      if (s.temp_col[i] == col_idx) return i;
    }
    return -1;
  }

  // Whether the player to act can advance column `sum` in state s.
  static bool can_play(const State& s, int sum) {
    const int idx = sum - 2;
    if (s.claimed[idx] != 0) return false;
    const int ti = temp_index(s, idx);
    if (ti >= 0) return s.temp_h[ti] < kLen[idx];
    if (s.temp_n >= kMaxMarkers) return false;
    const int me = (s.to_act == Player::kOne) ? 0 : 1;
    return s.perm[me][idx] < kLen[idx];
  }

  // Advance column `sum` by one for the player to act (must be playable).
  static void advance(State& s, int sum) {
    const int idx = sum - 2;
    const int ti = temp_index(s, idx);
    if (ti >= 0) {
      ++s.temp_h[ti];
      return;
    }
    MCMS_CHECK(s.temp_n < kMaxMarkers, "advance(): no marker available");
    const int me = (s.to_act == Player::kOne) ? 0 : 1;
    // insert keeping temp_col sorted ascending
    int pos = s.temp_n;
    while (pos > 0 && s.temp_col[pos - 1] > idx) {
      s.temp_col[pos] = s.temp_col[pos - 1];
      s.temp_h[pos] = s.temp_h[pos - 1];
      --pos;
    }
    s.temp_col[pos] = static_cast<std::int8_t>(idx);
    s.temp_h[pos] = static_cast<std::uint8_t>(s.perm[me][idx] + 1);
    ++s.temp_n;
  }

  static bool can_play_both(const State& s, int x, int y) {
    if (!can_play(s, x)) return false;
    State t = s;
    advance(t, x);
    return can_play(t, y);
  }

  // Whether the rolled dice admit any play at all (bust check).
  static bool any_play(const State& s, const std::array<std::uint8_t, 4>& d) {
    static constexpr int kSplit[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3},
                                         {0, 3, 1, 2}};
    for (const auto& sp : kSplit) {
      if (can_play(s, d[sp[0]] + d[sp[1]]) || can_play(s, d[sp[2]] + d[sp[3]]))
        return true;
    }
    return false;
  }

  // --- game interface -----------------------------------------------------
  static void legal_actions(const State& s, std::vector<Action>& out) {
    MCMS_CHECK(!is_terminal(s), "legal_actions() on terminal state");
    if (s.dice == 0) {
      out.push_back(Action{Action::Kind::kRoll, 0, 0});
      // Stopping requires progress this turn (a fresh turn must roll).
      if (s.temp_n > 0) out.push_back(Action{Action::Kind::kStop, 0, 0});
      return;
    }
    const std::array<std::uint8_t, 4> d = unpack_dice(s.dice);
    static constexpr int kSplit[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3},
                                         {0, 3, 1, 2}};
    Action cand[9];
    int n = 0;
    for (const auto& sp : kSplit) {
      std::uint8_t x = static_cast<std::uint8_t>(d[sp[0]] + d[sp[1]]);
      std::uint8_t y = static_cast<std::uint8_t>(d[sp[2]] + d[sp[3]]);
      if (x > y) std::swap(x, y);
      if (can_play_both(s, x, y)) {
        cand[n++] = Action{Action::Kind::kPlayBoth, x, y};
      } else {
        if (can_play(s, x)) cand[n++] = Action{Action::Kind::kPlayOne, x, 0};
        if (can_play(s, y)) cand[n++] = Action{Action::Kind::kPlayOne, y, 0};
      }
    }
    MCMS_CHECK(n > 0, "post-roll state admits no play (bust leaked)");
    // Sort by columns ascending (both-column plays before single plays on
    // ties), then deduplicate.
    std::sort(cand, cand + n, [](const Action& l, const Action& r) {
      const int lb = (l.kind == Action::Kind::kPlayOne) ? l.a : l.b;
      const int rb = (r.kind == Action::Kind::kPlayOne) ? r.a : r.b;
      if (l.a != r.a) return l.a < r.a;
      if (lb != rb) return lb < rb;
      return static_cast<int>(l.kind) < static_cast<int>(r.kind);
    });
    for (int i = 0; i < n; ++i) {
      if (i == 0 || !(cand[i] == cand[i - 1])) out.push_back(cand[i]);
    }
  }

  static void outcome_set(const State& s, const Action& a, OutcomeSet& out) {
    MCMS_CHECK(!is_terminal(s), "outcome_set() on terminal state");
    const ValueBounds b = bounds();
    if (a.kind == Action::Kind::kRoll) {
      MCMS_CHECK(s.dice == 0, "roll action on post-roll state");
      for (const RollOutcome& r : roll_outcomes()) out.add(r.id, r.p, b);
      return;
    }
    out.add(0, 1.0, b);
  }

  static State apply(const State& s, const Action& a, std::uint64_t outcome) {
    MCMS_CHECK(!is_terminal(s), "apply() on terminal state");
    State n = s;
    switch (a.kind) {
      case Action::Kind::kRoll: {
        MCMS_CHECK(s.dice == 0, "roll on post-roll state");
        MCMS_CHECK(outcome >= 1 && outcome <= 1296, "bad roll outcome id");
        const auto d = unpack_dice(static_cast<std::uint16_t>(outcome));
        if (any_play(s, d)) {
          n.dice = static_cast<std::uint16_t>(outcome);
        } else {  // bust: lose temp progress, turn passes
          clear_temps(n);
          n.dice = 0;
          n.to_act = opponent_of(s.to_act);
        }
        return n;
      }
      case Action::Kind::kStop: {
        MCMS_CHECK(s.dice == 0, "stop on post-roll state");
        MCMS_CHECK(s.temp_n > 0, "stop without progress this turn");
        MCMS_CHECK(outcome == 0, "bad outcome id");
        const int me = (s.to_act == Player::kOne) ? 0 : 1;
        for (int i = 0; i < s.temp_n; ++i) {
          const int idx = s.temp_col[i];
          n.perm[me][idx] = s.temp_h[i];
          if (s.temp_h[i] >= kLen[idx]) {
            n.claimed[idx] = static_cast<std::uint8_t>(me + 1);
          }
        }
        clear_temps(n);
        n.dice = 0;
        if (!is_terminal(n)) n.to_act = opponent_of(s.to_act);
        return n;
      }
      case Action::Kind::kPlayBoth: {
        MCMS_CHECK(s.dice != 0, "play on pre-roll state");
        MCMS_CHECK(outcome == 0, "bad outcome id");
        advance(n, a.a);
        advance(n, a.b);
        n.dice = 0;
        return n;
      }
      case Action::Kind::kPlayOne: {
        MCMS_CHECK(s.dice != 0, "play on pre-roll state");
        MCMS_CHECK(outcome == 0, "bad outcome id");
        advance(n, a.a);
        n.dice = 0;
        return n;
      }
    }
    throw ContractViolation("unreachable");
  }

  static std::uint64_t state_key(const State& s) {
    std::uint64_t h = 0x9ae16a3b2f90404fULL;
    auto absorb = [&h](std::uint64_t w) { h = mix64(h ^ w); };
    std::uint64_t w = 0;
    int bits = 0;
    auto push_byte = [&](std::uint8_t b) {
      w |= static_cast<std::uint64_t>(b) << bits;
      bits += 8;
      if (bits == 64) {
        absorb(w);
        w = 0;
        bits = 0;
      }
    };
    for (int p = 0; p < 2; ++p)
      for (int i = 0; i < kCols; ++i) push_byte(s.perm[p][i]);
    for (int i = 0; i < kCols; ++i) push_byte(s.claimed[i]);
    for (int i = 0; i < kMaxMarkers; ++i)
      push_byte(static_cast<std::uint8_t>(s.temp_col[i]));
    for (int i = 0; i < kMaxMarkers; ++i) push_byte(s.temp_h[i]);
    push_byte(s.temp_n);
    push_byte(static_cast<std::uint8_t>(s.dice & 0xff));
    push_byte(static_cast<std::uint8_t>(s.dice >> 8));
    push_byte(static_cast<std::uint8_t>(s.to_act == Player::kTwo ? 1 : 0));
    if (bits > 0) absorb(w);
    return h;
  }

  // Heuristic: fractional column progress (temp markers included for their
  // owner) plus 2 per claimed column, difference scaled by the maximum
  // attainable progress (11 columns + 2*3 claims = 17).
  static Value evaluate(const State& s) {
    if (is_terminal(s)) return utility1(s);
    double prog[2] = {0.0, 0.0};
    const int actor = (s.to_act == Player::kOne) ? 0 : 1;
    for (int p = 0; p < 2; ++p) {
      for (int i = 0; i < kCols; ++i) {
        double h = s.perm[p][i];
        if (p == actor) {
          const int ti = temp_index(s, i);
          if (ti >= 0) h = s.temp_h[ti];
        }
        prog[p] += h / kLen[i];
        if (s.claimed[i] == p + 1) prog[p] += 2.0;
      }
    }
    return clamp_value(100.0 * (prog[0] - prog[1]) / 17.0, bounds());
  }

  static std::string to_string(const State& s) {
    std::string r = "cantstop(act=" +
                    std::to_string(static_cast<int>(s.to_act)) + " dice=";
    if (s.dice == 0) {
      r += "-";
    } else {
      const auto d = unpack_dice(s.dice);
      for (int i = 0; i < 4; ++i) r += static_cast<char>('0' + d[i]);
    }
    r += " perm=";
    for (int p = 0; p < 2; ++p) {
      if (p) r += "/";
      for (int i = 0; i < kCols; ++i) {
        r += std::to_string(static_cast<int>(s.perm[p][i]));
        if (i + 1 < kCols) r += ",";
      }
    }
    r += " temp=";
    for (int i = 0; i < s.temp_n; ++i) {
      if (i) r += ",";
      r += std::to_string(s.temp_col[i] + 2) + ":" +
           std::to_string(static_cast<int>(s.temp_h[i]));
    }
    r += " claimed=";
    for (int i = 0; i < kCols; ++i)
      r += std::to_string(static_cast<int>(s.claimed[i]));
    r += ")";
    return r;
  }

  static std::string action_to_string(const State&, const Action& a) {
    switch (a.kind) {
      case Action::Kind::kRoll:
        return "roll";
      case Action::Kind::kStop:
        return "stop";
      case Action::Kind::kPlayBoth:
        return "play " + std::to_string(static_cast<int>(a.a)) + "+" +
               std::to_string(static_cast<int>(a.b));
      case Action::Kind::kPlayOne:
        return "play " + std::to_string(static_cast<int>(a.a));
    }
    return "?";
  }

 private:
  static void clear_temps(State& s) {
    for (int i = 0; i < kMaxMarkers; ++i) {
      s.temp_col[i] = -1;
      s.temp_h[i] = 0;
    }
    s.temp_n = 0;
  }
};

}  // namespace mcms

#endif  // MCMS_GAMES_CANT_STOP_HPP_
