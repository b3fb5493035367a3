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

#ifndef MCMS_GAMES_EWN_HPP_
#define MCMS_GAMES_EWN_HPP_

#include <array>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "mcms/core/game.hpp"

namespace mcms {

// EinStein würfelt nicht! on the 5x5 board.
//
// Each side owns pieces 1..6 in the opposing corner triangles: player 1's
// pieces start row-major at (0,0)=1,(0,1)=2,(0,2)=3,(1,0)=4,(1,1)=5,(2,0)=6
// and player 2's mirror them through the board center. Player 1 races to
// (4,4), player 2 to (0,0).
//
// A turn: the die decides which piece may move (if that piece is gone, the
// nearest surviving lower- and higher-numbered pieces are both options); the
// piece takes one king step toward its goal (3 directions, clipped to the
// board) and captures whatever it lands on, own pieces included. Reaching the
// goal square or eliminating every enemy piece wins.
//
// Chance modeling: the die roll that constrains a move is an outcome of the
// PREVIOUS move action. A non-final move has six uniform outcomes (the
// opponent's roll); a game-ending move has a single deterministic outcome.
// The initial position, where player 1 has not rolled yet, is chance-pending:
// it exposes one pseudo-action "roll" whose outcomes are player 1's die.
struct Ewn {
  static constexpr int kSize = 5;
  static constexpr int kSquares = 25;

  struct State {
    // 0 empty, +v player-1 piece v, -v player-2 piece v.
    std::array<std::int8_t, kSquares> board{};
    std::uint8_t pending_roll = 0;  // 0: chance-pending, else 1..6
    Player to_act = Player::kOne;

    bool operator==(const State& o) const {
      return board == o.board && pending_roll == o.pending_roll &&
             to_act == o.to_act;
    }
  };

  struct Action {
    enum class Kind : std::uint8_t { kMove = 0, kRoll = 1 };
    Kind kind = Kind::kMove;
    std::uint8_t from = 0;
    std::uint8_t to = 0;

    bool operator==(const Action& o) const {
      return kind == o.kind && from == o.from && to == o.to;
    }
  };

  static std::string name() { return "ewn"; }
  static ValueBounds bounds() { return ValueBounds{-100.0, +100.0}; }

  static State initial_state() {
    State s;
    constexpr std::array<std::uint8_t, 6> p1_squares = {0, 1, 2, 5, 6, 10};
    for (int v = 1; v <= 6; ++v) {
      const std::uint8_t sq = p1_squares[v - 1];
      s.board[sq] = static_cast<std::int8_t>(v);
      s.board[kSquares - 1 - sq] = static_cast<std::int8_t>(-v);
    }
    s.pending_roll = 0;
    s.to_act = Player::kOne;
    return s;
  }

  static int goal_square(Player p) {
    return p == Player::kOne ? kSquares - 1 : 0;
  }

  static int count_pieces(const State& s, Player p) {
    int n = 0;
    for (std::int8_t v : s.board) {
      if (p == Player::kOne ? v > 0 : v < 0) ++n;
    }
    return n;
  }

  static bool is_terminal(const State& s) {
    return s.board[kSquares - 1] > 0 || s.board[0] < 0 ||
           count_pieces(s, Player::kOne) == 0 ||
           count_pieces(s, Player::kTwo) == 0;
  }

  static Value utility1(const State& s) {
    MCMS_CHECK(is_terminal(s), "utility1() on non-terminal state");
    if (s.board[kSquares - 1] > 0 || count_pieces(s, Player::kTwo) == 0) {
      return +100.0;
    }
    return -100.0;
  }

  static Player player_to_act(const State& s) {
    MCMS_CHECK(!is_terminal(s), "player_to_act() on terminal state");
    return s.to_act;
  }

  static bool is_chance_pending(const State& s) {
    return !is_terminal(s) && s.pending_roll == 0;
  }

  // Target squares of one king step toward the goal, ascending by index.
  static void piece_targets(Player p, int from, int targets[3], int& n) {
    const int r = from / kSize, c = from % kSize;
    n = 0;
    if (p == Player::kOne) {
      if (c + 1 < kSize) targets[n++] = from + 1;
      if (r + 1 < kSize) targets[n++] = from + kSize;
      if (r + 1 < kSize && c + 1 < kSize) targets[n++] = from + kSize + 1;
    } else {
      if (r > 0 && c > 0) targets[n++] = from - kSize - 1;
      if (r > 0) targets[n++] = from - kSize;
      if (c > 0) targets[n++] = from - 1;
    }
  }

  static int find_piece(const State& s, Player p, int value) {
    const std::int8_t want =
        static_cast<std::int8_t>(p == Player::kOne ? value : -value);
    for (int i = 0; i < kSquares; ++i) {
      if (s.board[i] == want) return i;
    }
    return -1;
  }

  // Pieces movable under roll r: r itself if alive, else the nearest
  // surviving lower and higher values. Ascending by value.
  static void movable_pieces(const State& s, Player p, int roll,
                             int values[2], int& n) {
    n = 0;
    if (find_piece(s, p, roll) >= 0) {
      values[n++] = roll;
      return;
    }
    for (int v = roll - 1; v >= 1; --v) {
      if (find_piece(s, p, v) >= 0) {
        values[n++] = v;
        break;
      }
    }
    for (int v = roll + 1; v <= 6; ++v) {
      if (find_piece(s, p, v) >= 0) {
        values[n++] = v;
        break;
      }
    }
  }

  static void legal_actions(const State& s, std::vector<Action>& out) {
    MCMS_CHECK(!is_terminal(s), "legal_actions() on terminal state");
    if (s.pending_roll == 0) {
      out.push_back(Action{Action::Kind::kRoll, 0, 0});
      return;
    }
    const Player p = s.to_act;
    int values[2], nv = 0;
    movable_pieces(s, p, s.pending_roll, values, nv);
    MCMS_CHECK(nv > 0, "no movable piece: side has no pieces left?");
    for (int i = 0; i < nv; ++i) {
      const int from = find_piece(s, p, values[i]);
      int targets[3], nt = 0;
      piece_targets(p, from, targets, nt);
      for (int j = 0; j < nt; ++j) {
        out.push_back(Action{Action::Kind::kMove,
                             static_cast<std::uint8_t>(from),
                             static_cast<std::uint8_t>(targets[j])});
      }
    }
  }

  static void outcome_set(const State& s, const Action& a, OutcomeSet& out) {
    MCMS_CHECK(!is_terminal(s), "outcome_set() on terminal state");
    const ValueBounds b = bounds();
    if (a.kind == Action::Kind::kRoll) {
      MCMS_CHECK(s.pending_roll == 0, "roll action on non-pending state");
      for (std::uint64_t d = 1; d <= 6; ++d) out.add(d, 1.0 / 6.0, b);
      return;
    }
    MCMS_CHECK(s.pending_roll != 0, "move action on chance-pending state");
    State n = moved(s, a);
    if (is_terminal(n)) {
      out.add(0, 1.0, b);
    } else {
      for (std::uint64_t d = 1; d <= 6; ++d) out.add(d, 1.0 / 6.0, b);
    }
  }

  static State apply(const State& s, const Action& a, std::uint64_t outcome) {
    MCMS_CHECK(!is_terminal(s), "apply() on terminal state");
    if (a.kind == Action::Kind::kRoll) {
      MCMS_CHECK(outcome >= 1 && outcome <= 6, "bad roll outcome id");
      State n = s;
      n.pending_roll = static_cast<std::uint8_t>(outcome);
      return n;
    }
    State n = moved(s, a);
    if (is_terminal(n)) {
      MCMS_CHECK(outcome == 0, "bad outcome id for final move");
      return n;
    }
    MCMS_CHECK(outcome >= 1 && outcome <= 6, "bad roll outcome id");
    n.pending_roll = static_cast<std::uint8_t>(outcome);
    n.to_act = opponent_of(s.to_act);
    return n;
  }

  static std::uint64_t state_key(const State& s) {
    const auto& z = zobrist();
    std::uint64_t k = 0;
    for (int i = 0; i < kSquares; ++i) {
      k ^= z.piece[i][s.board[i] + 6];
    }
    k ^= z.roll[s.pending_roll];
    k ^= z.act[s.to_act == Player::kTwo ? 1 : 0];
    return k;
  }

  // Heuristic: each piece is worth 1 + (5 - d)/5 where d is its Chebyshev
  // distance to its goal; value is the normalized weight difference.
  static Value evaluate(const State& s) {
    if (is_terminal(s)) return utility1(s);
    double w1 = 0.0, w2 = 0.0;
    for (int i = 0; i < kSquares; ++i) {
      const std::int8_t v = s.board[i];
      if (v == 0) continue;
      const int r = i / kSize, c = i % kSize;
      if (v > 0) {
        const int d = std::max(kSize - 1 - r, kSize - 1 - c);
        w1 += 1.0 + (5.0 - d) / 5.0;
      } else {
        const int d = std::max(r, c);
        w2 += 1.0 + (5.0 - d) / 5.0;
      }
    }
    return 100.0 * (w1 - w2) / (w1 + w2);
  }

  static std::string to_string(const State& s) {
    std::string r;
    for (int row = 0; row < kSize; ++row) {
      for (int col = 0; col < kSize; ++col) {
        const std::int8_t v = s.board[row * kSize + col];
        r += ' ';
        if (v == 0) {
          r += '.';
        } else if (v > 0) {
          r += static_cast<char>('0' + v);  // 1..6 for player 1
        } else {
          r += static_cast<char>('a' - 1 - v);  // a..f for player 2's 1..6
        }
      }
      r += '\n';
    }
    r += "roll=" + std::to_string(static_cast<int>(s.pending_roll)) +
         " act=" + std::to_string(static_cast<int>(s.to_act)) + "\n";
    return r;
  }

  static std::string action_to_string(const State&, const Action& a) {
    if (a.kind == Action::Kind::kRoll) return "roll";
    return "move " + std::to_string(static_cast<int>(a.from)) + "->" +
           std::to_string(static_cast<int>(a.to));
  }

 private:
  struct Zobrist {
    std::uint64_t piece[kSquares][13];
    std::uint64_t roll[7];
    std::uint64_t act[2];
  };
  static const Zobrist& zobrist() {
    static const Zobrist z = [] {
      Zobrist t;
      std::uint64_t seed = 0x0edb88320ee1a695ULL;
      for (auto& row : t.piece) {
        for (auto& v : row) v = splitmix64(seed);
      }
      for (auto& v : t.roll) v = splitmix64(seed);
      for (auto& v : t.act) v = splitmix64(seed);
      return t;
    }();
    return z;
  }

  static State moved(const State& s, const Action& a) {
    MCMS_CHECK(a.from < kSquares && a.to < kSquares && a.from != a.to,
               "malformed move");
    const std::int8_t piece = s.board[a.from];
    MCMS_CHECK(piece != 0, "move from empty square");
    MCMS_CHECK((s.to_act == Player::kOne) == (piece > 0),
               "moving opponent's piece");
    State n = s;
    n.board[a.from] = 0;
    n.board[a.to] = piece;
    n.pending_roll = 0;
    return n;
  }
};

}  // namespace mcms

#endif  // MCMS_GAMES_EWN_HPP_
