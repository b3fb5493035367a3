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

#ifndef MCMS_GAMES_RA_HPP_
#define MCMS_GAMES_RA_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mcms/core/game.hpp"

namespace mcms {

// Two-player Ra (Knizia) at a reduced, documented tile scale that keeps the
// full game structure: push-your-luck tile draws, Ra-triggered and voluntary
// sun auctions, three epochs, per-epoch and end-of-game scoring.
//
// Tile bag: 12 Ra, 4 God, 5 Gold, 10 Pharaoh, 10 Nile, 6 Flood, 4 each of 4
// civilization types, 5 each of 4 monument types (83 tiles). The epoch ends
// when the 4th Ra is drawn. The auction track holds at most 8 tiles (drawing
// is illegal when full). Suns: player 1 holds {2,5,6,9}, player 2 {3,4,7,8},
// center sun 1.
//
// Turn: draw a tile (chance outcomes of the draw action) or invoke an auction
// (requires a tile on the track and an active sun). A drawn Ra starts an
// auction. Auctions are one round of bids, non-invoker first, invoker last;
// bids must exceed the current high bid; the invoker of a voluntary auction
// must bid if everyone else passed (so auctions always consume a sun, which
// bounds the game). The winner exchanges their sun for the center sun (won
// sun becomes active next epoch) and takes all track tiles. Players with no
// active suns are skipped; the epoch ends early when both are sunless.
//
// Scoring per epoch: god +2, gold +3, pharaohs strictly-most +5 / strictly-
// fewest -2 (tie: neither), niles + floods +1 each if at least one flood was
// collected this epoch (niles persist across epochs, floods do not), civ
// distinct-count 0 -> -5, 3 -> +5, 4 -> +10. End of game: +1 per distinct
// monument type, +5 per monument type with 3+ copies, sun total higher +5 /
// lower -5. Higher score wins (+100/-100), equal scores tie (0).
//
// Simplifications (documented): the god tile's exchange power is omitted
// (gods are points only); if the bag empties the game ends immediately after
// scoring the current epoch; track tiles are discarded at epoch end.
struct Ra {
  enum Kind : std::uint8_t {
    kRa = 0,
    kGod,
    kGold,
    kPharaoh,
    kNile,
    kFlood,
    kCiv0,
    kCiv1,
    kCiv2,
    kCiv3,
    kMon0,
    kMon1,
    kMon2,
    kMon3,
    kKinds
  };
  static constexpr std::array<std::uint8_t, kKinds> kBagInit = {
      12, 4, 5, 10, 10, 6, 4, 4, 4, 4, 5, 5, 5, 5};
  static constexpr int kRaTrackLen = 4;
  static constexpr int kTrackCap = 8;
  static constexpr int kEpochs = 3;

  struct State {
    std::array<std::uint8_t, kKinds> bag = kBagInit;
    std::array<std::uint8_t, kKinds> track = {};  // Ra tiles never stored here
    std::uint8_t track_n = 0;
    std::uint8_t ra_count = 0;
    std::uint8_t epoch = 1;  // 1..3; 4 means game over
    std::int16_t score[2] = {0, 0};
    std::uint16_t suns_active[2] = {0, 0};    // bitmask of sun values 1..9
    std::uint16_t suns_inactive[2] = {0, 0};  // won this epoch
    std::uint8_t center_sun = 1;
    // holdings; gods/gold/floods/civ reset each epoch, rest persist
    std::uint8_t pharaohs[2] = {0, 0};
    std::uint8_t niles[2] = {0, 0};
    std::uint8_t floods[2] = {0, 0};
    std::uint8_t gods[2] = {0, 0};
    std::uint8_t gold[2] = {0, 0};
    std::uint8_t civ[2][4] = {{0, 0, 0, 0}, {0, 0, 0, 0}};
    std::uint8_t mon[2][4] = {{0, 0, 0, 0}, {0, 0, 0, 0}};
    // auction bookkeeping
    std::uint8_t in_auction = 0;
    std::uint8_t voluntary = 0;
    std::uint8_t starter = 0;        // player index 0/1
    std::uint8_t auction_stage = 0;  // index into the bidder order
    std::uint8_t high_bid = 0;       // 0: none yet
    std::uint8_t high_bidder = 0;
    std::uint8_t to_move = 0;  // player index 0/1

    bool operator==(const State& o) const {
      return bag == o.bag && track == o.track && track_n == o.track_n &&
             ra_count == o.ra_count && epoch == o.epoch &&
             score[0] == o.score[0] && score[1] == o.score[1] &&
             suns_active[0] == o.suns_active[0] &&
             suns_active[1] == o.suns_active[1] &&
             suns_inactive[0] == o.suns_inactive[0] &&
             suns_inactive[1] == o.suns_inactive[1] &&
             center_sun == o.center_sun && pharaohs[0] == o.pharaohs[0] &&
             pharaohs[1] == o.pharaohs[1] && niles[0] == o.niles[0] &&
             niles[1] == o.niles[1] && floods[0] == o.floods[0] &&
             floods[1] == o.floods[1] && gods[0] == o.gods[0] &&
             gods[1] == o.gods[1] && gold[0] == o.gold[0] &&
             gold[1] == o.gold[1] &&
             std::equal(&civ[0][0], &civ[0][0] + 8, &o.civ[0][0]) &&
             std::equal(&mon[0][0], &mon[0][0] + 8, &o.mon[0][0]) &&
             in_auction == o.in_auction && voluntary == o.voluntary &&
             starter == o.starter && auction_stage == o.auction_stage &&
             high_bid == o.high_bid && high_bidder == o.high_bidder &&
             to_move == o.to_move;
    }
  };

  struct Action {
    enum class Kind : std::uint8_t { kDraw = 0, kInvoke = 1, kBid = 2, kPass = 3 };
    Kind kind = Kind::kDraw;
    std::uint8_t sun = 0;  // bid value for kBid

    bool operator==(const Action& o) const {
      return kind == o.kind && sun == o.sun;
    }
  };

  static std::string name() { return "ra"; }
  static ValueBounds bounds() { return ValueBounds{-100.0, +100.0}; }

  static State initial_state() {
    State s;
    s.suns_active[0] = sun_mask({2, 5, 6, 9});
    s.suns_active[1] = sun_mask({3, 4, 7, 8});
    return s;
  }

  static bool is_terminal(const State& s) { return s.epoch > kEpochs; }

  static Value utility1(const State& s) {
    MCMS_CHECK(is_terminal(s), "utility1() on non-terminal state");
    if (s.score[0] > s.score[1]) return +100.0;
    if (s.score[0] < s.score[1]) return -100.0;
    return 0.0;
  }

  static Player player_to_act(const State& s) {
    MCMS_CHECK(!is_terminal(s), "player_to_act() on terminal state");
    return s.to_move == 0 ? Player::kOne : Player::kTwo;
  }

  static bool is_chance_pending(const State&) { return false; }

  static void legal_actions(const State& s, std::vector<Action>& out) {
    MCMS_CHECK(!is_terminal(s), "legal_actions() on terminal state");
    if (s.in_auction) {
      const int me = s.to_move;
      const bool forced = s.voluntary && s.starter == me && s.high_bid == 0;
      bool has_bid = false;
      for (int v = 1; v <= 9; ++v) {
        if ((s.suns_active[me] >> v) & 1 && v > s.high_bid) {
          out.push_back(Action{Action::Kind::kBid,
                               static_cast<std::uint8_t>(v)});
          has_bid = true;
        }
      }
      if (!forced || !has_bid) out.push_back(Action{Action::Kind::kPass, 0});
      return;
    }
    if (bag_total(s) > 0 && s.track_n < kTrackCap) {
      out.push_back(Action{Action::Kind::kDraw, 0});
    }
    if (s.track_n >= 1 && s.suns_active[s.to_move] != 0) {
      out.push_back(Action{Action::Kind::kInvoke, 0});
    }
    MCMS_CHECK(!out.empty(), "stuck non-terminal state (bag/track invariant)");
  }

  static void outcome_set(const State& s, const Action& a, OutcomeSet& out) {
    MCMS_CHECK(!is_terminal(s), "outcome_set() on terminal state");
    const ValueBounds b = bounds();
    if (a.kind == Action::Kind::kDraw) {
      const int total = bag_total(s);
      MCMS_CHECK(total > 0, "draw from empty bag");
      for (std::uint64_t k = 0; k < kKinds; ++k) {
        if (s.bag[k] > 0) out.add(k, static_cast<double>(s.bag[k]) / total, b);
      }
      return;
    }
    out.add(0, 1.0, b);
  }

  static State apply(const State& s, const Action& a, std::uint64_t outcome) {
    MCMS_CHECK(!is_terminal(s), "apply() on terminal state");
    State n = s;
    const int me = s.to_move;
    switch (a.kind) {
      case Action::Kind::kDraw: {
        MCMS_CHECK(!s.in_auction, "draw during auction");
        MCMS_CHECK(outcome < kKinds && s.bag[outcome] > 0,
                   "bad draw outcome id");
        --n.bag[outcome];
        if (outcome == kRa) {
          ++n.ra_count;
          if (n.ra_count >= kRaTrackLen) {
            end_epoch(n, me);
          } else {
            start_auction(n, me, /*voluntary=*/false);
          }
        } else {
          ++n.track[outcome];
          ++n.track_n;
          n.to_move = next_with_suns(n, 1 - me);
        }
        if (!is_terminal(n) && bag_total(n) == 0) end_game_on_empty_bag(n);
        return n;
      }
      case Action::Kind::kInvoke: {
        MCMS_CHECK(!s.in_auction, "invoke during auction");
        MCMS_CHECK(s.track_n >= 1 && s.suns_active[me] != 0,
                   "illegal invoke");
        MCMS_CHECK(outcome == 0, "bad outcome id");
        start_auction(n, me, /*voluntary=*/true);
        return n;
      }
      case Action::Kind::kBid: {
        MCMS_CHECK(s.in_auction, "bid outside auction");
        MCMS_CHECK(outcome == 0, "bad outcome id");
        MCMS_CHECK(a.sun > s.high_bid && ((s.suns_active[me] >> a.sun) & 1),
                   "illegal bid");
        n.high_bid = a.sun;
        n.high_bidder = static_cast<std::uint8_t>(me);
        advance_auction(n);
        return n;
      }
      case Action::Kind::kPass: {
        MCMS_CHECK(s.in_auction, "pass outside auction");
        MCMS_CHECK(outcome == 0, "bad outcome id");
        advance_auction(n);
        return n;
      }
    }
    throw ContractViolation("unreachable");
  }

  static std::uint64_t state_key(const State& s) {
    std::uint64_t h = 0xc2b2ae3d27d4eb4fULL;
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
    for (int k = 0; k < kKinds; ++k) push_byte(s.bag[k]);
    for (int k = 0; k < kKinds; ++k) push_byte(s.track[k]);
    push_byte(s.ra_count);
    push_byte(s.epoch);
    for (int p = 0; p < 2; ++p) {
      push_byte(static_cast<std::uint8_t>(s.score[p] & 0xff));
      push_byte(static_cast<std::uint8_t>((s.score[p] >> 8) & 0xff));
      push_byte(static_cast<std::uint8_t>(s.suns_active[p] & 0xff));
      push_byte(static_cast<std::uint8_t>(s.suns_active[p] >> 8));
      push_byte(static_cast<std::uint8_t>(s.suns_inactive[p] & 0xff));
      push_byte(static_cast<std::uint8_t>(s.suns_inactive[p] >> 8));
      push_byte(s.pharaohs[p]);
      push_byte(s.niles[p]);
      push_byte(s.floods[p]);
      push_byte(s.gods[p]);
      push_byte(s.gold[p]);
      for (int t = 0; t < 4; ++t) push_byte(s.civ[p][t]);
      for (int t = 0; t < 4; ++t) push_byte(s.mon[p][t]);
    }
    push_byte(s.center_sun);
    push_byte(s.in_auction);
    push_byte(s.voluntary);
    push_byte(s.starter);
    push_byte(s.auction_stage);
    push_byte(s.high_bid);
    push_byte(s.high_bidder);
    push_byte(s.to_move);
    if (bits > 0) absorb(w);
    return h;
  }

  // Heuristic: current score difference plus a tempo bonus of 2 per active
  // sun in hand, clamped.
  static Value evaluate(const State& s) {
    if (is_terminal(s)) return utility1(s);
    const int a0 = popcount16(s.suns_active[0]);
    const int a1 = popcount16(s.suns_active[1]);
    return clamp_value(
        static_cast<double>(s.score[0] - s.score[1]) + 2.0 * (a0 - a1),
        bounds());
  }

  static std::string to_string(const State& s) {
    std::string r = "ra(epoch=" + std::to_string(static_cast<int>(s.epoch)) +
                    " ras=" + std::to_string(static_cast<int>(s.ra_count)) +
                    " score=" + std::to_string(s.score[0]) + "/" +
                    std::to_string(s.score[1]) +
                    " track_n=" + std::to_string(static_cast<int>(s.track_n));
    if (s.in_auction) {
      r += " auction(high=" + std::to_string(static_cast<int>(s.high_bid)) +
           " by=" + std::to_string(static_cast<int>(s.high_bidder)) + ")";
    }
    r += " act=" + std::to_string(static_cast<int>(s.to_move) + 1) + ")";
    return r;
  }

  static std::string action_to_string(const State&, const Action& a) {
    switch (a.kind) {
      case Action::Kind::kDraw:
        return "draw";
      case Action::Kind::kInvoke:
        return "invoke";
      case Action::Kind::kBid:
        return "bid " + std::to_string(static_cast<int>(a.sun));
      case Action::Kind::kPass:
        return "pass";
    }
    return "?";
  }

  static int bag_total(const State& s) {
    int t = 0;
    for (int k = 0; k < kKinds; ++k) t += s.bag[k];
    return t;
  }

  static int popcount16(std::uint16_t m) {
    int n = 0;
    while (m) {
      m &= static_cast<std::uint16_t>(m - 1);
      ++n;
    }
    return n;
  }

  static int sun_value_total(const State& s, int p) {
    int t = 0;
    for (int v = 1; v <= 9; ++v) {
      if (((s.suns_active[p] | s.suns_inactive[p]) >> v) & 1) t += v;
    }
    return t;
  }

 private:
  static std::uint16_t sun_mask(std::initializer_list<int> values) {
    std::uint16_t m = 0;
    for (int v : values) m |= static_cast<std::uint16_t>(1u << v);
    return m;
  }

  // Bidder order: non-starter first, starter last, sunless players skipped.
  // Returns the number of participants and fills order[].
  static int bidder_order(const State& s, int order[2]) {
    int n = 0;
    const int other = 1 - s.starter;
    if (s.suns_active[other] != 0) order[n++] = other;
    if (s.suns_active[s.starter] != 0) order[n++] = s.starter;
    return n;
  }

  static void start_auction(State& n, int starter, bool voluntary) {
    n.in_auction = 1;
    n.voluntary = voluntary ? 1 : 0;
    n.starter = static_cast<std::uint8_t>(starter);
    n.auction_stage = 0;
    n.high_bid = 0;
    n.high_bidder = 0;
    int order[2];
    const int parts = bidder_order(n, order);
    MCMS_CHECK(parts > 0, "auction with no sun-holding participants");
    n.to_move = static_cast<std::uint8_t>(order[0]);
  }

  static void advance_auction(State& n) {
    int order[2];
    const int parts = bidder_order(n, order);
    ++n.auction_stage;
    if (n.auction_stage >= parts) {
      resolve_auction(n);
    } else {
      n.to_move = static_cast<std::uint8_t>(order[n.auction_stage]);
    }
  }

  static void resolve_auction(State& n) {
    const int starter = n.starter;
    if (n.high_bid > 0) {
      const int w = n.high_bidder;
      n.suns_active[w] &= static_cast<std::uint16_t>(~(1u << n.high_bid));
      n.suns_inactive[w] |= static_cast<std::uint16_t>(1u << n.center_sun);
      n.center_sun = n.high_bid;
      // winner takes the whole track
      for (int k = 0; k < kKinds; ++k) {
        add_tiles(n, w, static_cast<Kind>(k), n.track[k]);
        n.track[k] = 0;
      }
      n.track_n = 0;
    }
    n.in_auction = 0;
    n.voluntary = 0;
    n.auction_stage = 0;
    n.high_bid = 0;
    n.high_bidder = 0;
    if (n.suns_active[0] == 0 && n.suns_active[1] == 0) {
      end_epoch(n, starter);
      return;
    }
    n.to_move = next_with_suns(n, 1 - starter);
  }

  static void add_tiles(State& n, int p, Kind k, int count) {
    if (count == 0) return;
    switch (k) {
      case kGod: n.gods[p] = static_cast<std::uint8_t>(n.gods[p] + count); break;
      case kGold: n.gold[p] = static_cast<std::uint8_t>(n.gold[p] + count); break;
      case kPharaoh:
        n.pharaohs[p] = static_cast<std::uint8_t>(n.pharaohs[p] + count);
        break;
      case kNile: n.niles[p] = static_cast<std::uint8_t>(n.niles[p] + count); break;
      case kFlood:
        n.floods[p] = static_cast<std::uint8_t>(n.floods[p] + count);
        break;
      case kCiv0:
      case kCiv1:
      case kCiv2:
      case kCiv3:
        n.civ[p][k - kCiv0] =
            static_cast<std::uint8_t>(n.civ[p][k - kCiv0] + count);
        break;
      case kMon0:
      case kMon1:
      case kMon2:
      case kMon3:
        n.mon[p][k - kMon0] =
            static_cast<std::uint8_t>(n.mon[p][k - kMon0] + count);
        break;
      case kRa:
      case kKinds:
        throw ContractViolation("Ra tile on auction track");
    }
  }

  static int next_with_suns(const State& s, int preferred) {
    if (s.suns_active[preferred] != 0) return preferred;
    MCMS_CHECK(s.suns_active[1 - preferred] != 0,
               "both players sunless outside epoch end");
    return 1 - preferred;
  }

  static void score_epoch(State& n) {
    for (int p = 0; p < 2; ++p) {
      int pts = 2 * n.gods[p] + 3 * n.gold[p];
      if (n.floods[p] > 0) pts += n.niles[p] + n.floods[p];
      int distinct = 0;
      for (int t = 0; t < 4; ++t) distinct += (n.civ[p][t] > 0);
      if (distinct == 0) pts -= 5;
      if (distinct == 3) pts += 5;
      if (distinct == 4) pts += 10;
      n.score[p] = static_cast<std::int16_t>(n.score[p] + pts);
    }
    if (n.pharaohs[0] > n.pharaohs[1]) {
      n.score[0] = static_cast<std::int16_t>(n.score[0] + 5);
      n.score[1] = static_cast<std::int16_t>(n.score[1] - 2);
    } else if (n.pharaohs[1] > n.pharaohs[0]) {
      n.score[1] = static_cast<std::int16_t>(n.score[1] + 5);
      n.score[0] = static_cast<std::int16_t>(n.score[0] - 2);
    }
  }

  static void score_final(State& n) {
    for (int p = 0; p < 2; ++p) {
      int pts = 0;
      int distinct = 0;
      for (int t = 0; t < 4; ++t) {
        if (n.mon[p][t] > 0) ++distinct;
        if (n.mon[p][t] >= 3) pts += 5;
      }
      pts += distinct;
      n.score[p] = static_cast<std::int16_t>(n.score[p] + pts);
    }
    const int s0 = sun_value_total(n, 0), s1 = sun_value_total(n, 1);
    if (s0 > s1) {
      n.score[0] = static_cast<std::int16_t>(n.score[0] + 5);
      n.score[1] = static_cast<std::int16_t>(n.score[1] - 5);
    } else if (s1 > s0) {
      n.score[1] = static_cast<std::int16_t>(n.score[1] + 5);
      n.score[0] = static_cast<std::int16_t>(n.score[0] - 5);
    }
  }

  static void reset_for_next_epoch(State& n) {
    for (int p = 0; p < 2; ++p) {
      n.gods[p] = n.gold[p] = n.floods[p] = 0;
      for (int t = 0; t < 4; ++t) n.civ[p][t] = 0;
      n.suns_active[p] |= n.suns_inactive[p];
      n.suns_inactive[p] = 0;
    }
    n.track.fill(0);
    n.track_n = 0;
    n.ra_count = 0;
    n.in_auction = 0;
    n.voluntary = 0;
    n.auction_stage = 0;
    n.high_bid = 0;
    n.high_bidder = 0;
  }

  static void end_epoch(State& n, int trigger) {
    score_epoch(n);
    if (n.epoch >= kEpochs) {
      score_final(n);
      n.epoch = kEpochs + 1;
      return;
    }
    ++n.epoch;
    reset_for_next_epoch(n);
    n.to_move = static_cast<std::uint8_t>(1 - trigger);
  }

  static void end_game_on_empty_bag(State& n) {
    score_epoch(n);
    score_final(n);
    n.epoch = kEpochs + 1;
  }
};

}  // namespace mcms

#endif  // MCMS_GAMES_RA_HPP_
