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

#ifndef MCMS_ORACLE_PIG_VALUES_HPP_
#define MCMS_ORACLE_PIG_VALUES_HPP_

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "mcms/core/rng.hpp"
#include "mcms/games/pig.hpp"

namespace mcms {

// Exact solution of two-dice Pig by value iteration over the reachable state
// space. Values are optimal game values on the +/-100 utility scale for
// player 1, under optimal play by both sides.
//
// The state graph has cycles (a double 1 sends a banked score back to zero),
// so the table is computed as the fixed point of the minimax Bellman
// operator, iterated from all-zero until the sweep residual is tiny. Two
// sweep schemes are provided: Jacobi (double buffered; deterministic and
// order-independent, the default) and Gauss-Seidel (in place; updates
// propagate within a sweep, so it reaches the same fixed point along a
// different trajectory and serves as an independent cross-check).
class PigOracle {
 public:
  enum class Method : std::int32_t { kJacobi = 0, kGaussSeidel = 1 };

  struct SolveInfo {
    Method method = Method::kJacobi;
    int sweeps = 0;
    double residual = 0.0;       // final max |update| over reachable states
    std::size_t reachable = 0;   // reachable non-terminal state count
  };

  // Dense index space: scores 0..99 each, turn total 0..100, two actors.
  static constexpr std::size_t kSlots = 100ull * 100ull * 101ull * 2ull;

  static std::size_t index_of(const Pig::State& s) {
    return ((static_cast<std::size_t>(s.score1) * 100 + s.score2) * 101 +
            s.turn_total) *
               2 +
           (s.to_act == Player::kTwo ? 1 : 0);
  }

  static Pig::State state_of(std::size_t idx) {
    Pig::State s;
    s.to_act = (idx & 1) ? Player::kTwo : Player::kOne;
    idx >>= 1;
    s.turn_total = static_cast<std::uint8_t>(idx % 101);
    idx /= 101;
    s.score2 = static_cast<std::uint8_t>(idx % 100);
    s.score1 = static_cast<std::uint8_t>(idx / 100);
    return s;
  }

  // Solves the game. `tol` bounds the final sweep residual.
  static PigOracle solve(Method method = Method::kJacobi, double tol = 1e-11,
                         int max_sweeps = 1000000) {
    PigOracle o;
    o.enumerate_reachable();
    o.v_.assign(kSlots, 0.0);
    std::vector<double> next;
    if (method == Method::kJacobi) next.assign(kSlots, 0.0);

    double residual = 0.0;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
      residual = 0.0;
      if (method == Method::kJacobi) {
        for (std::uint32_t idx : o.reachable_) {
          const double nv = o.backup(o.v_, idx);
          const double d = nv - o.v_[idx];
          if (d > residual) residual = d;
          if (-d > residual) residual = -d;
          next[idx] = nv;
        }
        o.v_.swap(next);
      } else {
        for (std::uint32_t idx : o.reachable_) {
          const double nv = o.backup(o.v_, idx);
          const double d = nv - o.v_[idx];
          if (d > residual) residual = d;
          if (-d > residual) residual = -d;
          o.v_[idx] = nv;
        }
      }
      if (residual < tol) {
        ++sweep;
        break;
      }
    }
    o.info_.method = method;
    o.info_.sweeps = sweep;
    o.info_.residual = residual;
    o.info_.reachable = o.reachable_.size();
    MCMS_CHECK(residual < tol, "Pig value iteration failed to converge");
    return o;
  }

  const SolveInfo& info() const { return info_; }
  const std::vector<std::uint32_t>& reachable_indices() const {
    return reachable_;
  }

  bool is_reachable(const Pig::State& s) const {
    return !Pig::is_terminal(s) && mask_[index_of(s)] != 0;
  }

  // Optimal game value (player-1 scale). Terminal states score themselves.
  Value value(const Pig::State& s) const {
    if (Pig::is_terminal(s)) return Pig::utility1(s);
    return v_[index_of(s)];
  }

  // Expected table value of taking `a` in `s`.
  Value q_value(const Pig::State& s, Pig::Action a) const {
    MCMS_CHECK(!Pig::is_terminal(s), "q_value() on terminal state");
    return a == Pig::Action::kRoll ? q_roll(v_, s) : q_stop(v_, s);
  }

  // The table-optimal action; ties resolved toward roll (action order).
  Pig::Action greedy_action(const Pig::State& s) const {
    const double qr = q_value(s, Pig::Action::kRoll);
    const double qs = q_value(s, Pig::Action::kStop);
    if (s.to_act == Player::kOne) {
      return qr >= qs ? Pig::Action::kRoll : Pig::Action::kStop;
    }
    return qr <= qs ? Pig::Action::kRoll : Pig::Action::kStop;
  }

  // Shortfall of `a` against the table's best action value, from the acting
  // player's point of view. Non-negative; exactly zero for greedy_action.
  Value regret(const Pig::State& s, Pig::Action a) const {
    const double qr = q_value(s, Pig::Action::kRoll);
    const double qs = q_value(s, Pig::Action::kStop);
    const double qa = (a == Pig::Action::kRoll) ? qr : qs;
    if (s.to_act == Player::kOne) return (qr >= qs ? qr : qs) - qa;
    return qa - (qr <= qs ? qr : qs);
  }

  // Uniform draw from the reachable non-terminal states.
  Pig::State sample_reachable(Rng& rng) const {
    const std::uint64_t i = rng.next_below(reachable_.size());
    return state_of(reachable_[static_cast<std::size_t>(i)]);
  }

  bool save(const std::string& path) const {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) return false;
    Header h;
    std::memcpy(h.magic, kMagic, 8);
    h.slots = kSlots;
    h.reachable = reachable_.size();
    h.residual = info_.residual;
    h.sweeps = info_.sweeps;
    h.method = static_cast<std::int32_t>(info_.method);
    bool ok = std::fwrite(&h, sizeof(h), 1, f) == 1;
    ok = ok && std::fwrite(reachable_.data(), sizeof(std::uint32_t),
                           reachable_.size(), f) == reachable_.size();
    ok = ok && std::fwrite(v_.data(), sizeof(double), v_.size(), f) ==
                   v_.size();
    ok = (std::fclose(f) == 0) && ok;
    return ok;
  }

  static std::optional<PigOracle> load(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) return std::nullopt;
    Header h;
    if (std::fread(&h, sizeof(h), 1, f) != 1 ||
        std::memcmp(h.magic, kMagic, 8) != 0 || h.slots != kSlots ||
        h.reachable == 0 || h.reachable > kSlots) {
      std::fclose(f);
      return std::nullopt;
    }
    PigOracle o;
    o.reachable_.resize(h.reachable);
    o.v_.resize(kSlots);
    bool ok = std::fread(o.reachable_.data(), sizeof(std::uint32_t),
                         h.reachable, f) == h.reachable;
    ok = ok && std::fread(o.v_.data(), sizeof(double), kSlots, f) == kSlots;
    std::fclose(f);
    if (!ok) return std::nullopt;
    o.mask_.assign(kSlots, 0);
    for (std::uint32_t idx : o.reachable_) o.mask_[idx] = 1;
    o.info_.method = static_cast<Method>(h.method);
    o.info_.sweeps = h.sweeps;
    o.info_.residual = h.residual;
    o.info_.reachable = h.reachable;
    return o;
  }

 private:
  struct Header {
    char magic[8];
    std::uint64_t slots;
    std::uint64_t reachable;
    double residual;
    std::int32_t sweeps;
    std::int32_t method;
  };
  static constexpr const char kMagic[9] = "MCMSPIG1";

  PigOracle() = default;

  // Successor values share the grouped dice distribution below, so the sweep
  // and the public q_value/regret queries are numerically identical.
  //
  // Two-dice roll, grouped by effect: double 1 (1/36) wipes the banked
  // score, exactly one 1 (10/36) wipes the turn total, and each no-1 sum
  // s = 4..12 advances the turn total with probability kSumP[s].
  static constexpr double kP11 = 1.0 / 36.0;
  static constexpr double kP1x = 10.0 / 36.0;
  static const std::array<double, 13>& sum_p() {
    static const std::array<double, 13> table = [] {
      std::array<double, 13> t{};
      for (const auto& d : Pig::dice_pairs()) {
        if (d.a != 1 && d.b != 1) t[d.a + d.b] += d.p;
      }
      return t;
    }();
    return table;
  }

  static double q_stop(const std::vector<double>& v, const Pig::State& s) {
    const bool p1 = (s.to_act == Player::kOne);
    const int banked = (p1 ? s.score1 : s.score2) + s.turn_total;
    if (banked >= Pig::kGoal) return p1 ? +100.0 : -100.0;
    Pig::State n = s;
    (p1 ? n.score1 : n.score2) = static_cast<std::uint8_t>(banked);
    n.turn_total = 0;
    n.to_act = opponent_of(s.to_act);
    return v[index_of(n)];
  }

  static double q_roll(const std::vector<double>& v, const Pig::State& s) {
    const bool p1 = (s.to_act == Player::kOne);
    const int my = p1 ? s.score1 : s.score2;
    const int cap = Pig::kGoal - my;

    Pig::State wipe = s;  // double 1: banked score and turn total lost
    (p1 ? wipe.score1 : wipe.score2) = 0;
    wipe.turn_total = 0;
    wipe.to_act = opponent_of(s.to_act);

    Pig::State lose = s;  // single 1: turn total lost
    lose.turn_total = 0;
    lose.to_act = opponent_of(s.to_act);

    double acc = kP11 * v[index_of(wipe)] + kP1x * v[index_of(lose)];
    const auto& sp = sum_p();
    Pig::State adv = s;
    for (int sum = 4; sum <= 12; ++sum) {
      int t = s.turn_total + sum;
      if (t > cap) t = cap;
      adv.turn_total = static_cast<std::uint8_t>(t);
      acc += sp[sum] * v[index_of(adv)];
    }
    return acc;
  }

  double backup(const std::vector<double>& v, std::uint32_t idx) const {
    const Pig::State s = state_of(idx);
    const double qr = q_roll(v, s);
    const double qs = q_stop(v, s);
    if (s.to_act == Player::kOne) return qr >= qs ? qr : qs;
    return qr <= qs ? qr : qs;
  }

  void enumerate_reachable() {
    mask_.assign(kSlots, 0);
    reachable_.clear();
    std::vector<std::uint32_t> queue;
    auto push = [&](const Pig::State& s) {
      if (Pig::is_terminal(s)) return;
      const std::size_t idx = index_of(s);
      if (mask_[idx]) return;
      mask_[idx] = 1;
      queue.push_back(static_cast<std::uint32_t>(idx));
    };
    push(Pig::initial_state());
    std::size_t head = 0;
    while (head < queue.size()) {
      const Pig::State s = state_of(queue[head++]);
      push(Pig::apply(s, Pig::Action::kStop, 0));
      for (std::uint64_t i = 0; i < Pig::dice_pairs().size(); ++i) {
        push(Pig::apply(s, Pig::Action::kRoll, i));
      }
    }
    reachable_ = std::move(queue);
  }

  std::vector<double> v_;
  std::vector<std::uint8_t> mask_;
  std::vector<std::uint32_t> reachable_;
  SolveInfo info_;
};

}  // namespace mcms

#endif  // MCMS_ORACLE_PIG_VALUES_HPP_
