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

#ifndef MCMS_CORE_GAME_HPP_
#define MCMS_CORE_GAME_HPP_

#include <concepts>
#include <cstdint>
#include <string>
#include <vector>

#include "mcms/core/outcome.hpp"
#include "mcms/core/rng.hpp"
#include "mcms/core/types.hpp"

namespace mcms {

// Static interface every game domain implements. A game is a tag type; all
// operations are static and the per-position data lives in G::State.
//
// Model: the game alternates decision states (a player picks an action) with
// implicit chance. Every (state, action) pair owns an outcome distribution —
// deterministic actions simply have a single outcome. States in which dice
// must land before anyone can act ("chance-pending") expose exactly one
// pseudo-action whose outcomes are the pending roll, so engines can treat
// them as one-action decision nodes.
//
// Contract:
//  * legal_actions / outcome_set / apply must not be called on terminal
//    states; utility1 only on terminal states.
//  * legal_actions is non-empty for every non-terminal state and its order is
//    deterministic (the game's documented static move order).
//  * outcome_set entries have positive probabilities summing to 1, ordered
//    deterministically, with bounds initialized to the game's value bounds.
//  * apply(s, a, id) requires id to be one of outcome_set(s, a)'s ids.
//  * state_key is a stable 64-bit hash of the position (chance-pending flag
//    and player to act included).
//  * evaluate returns utility1 on terminal states and a heuristic inside the
//    value bounds otherwise.
template <typename G>
concept Game = requires(const typename G::State& s, const typename G::Action& a,
                        std::vector<typename G::Action>& actions,
                        OutcomeSet& outcomes, std::uint64_t id) {
  typename G::State;
  typename G::Action;
  { G::name() } -> std::convertible_to<std::string>;
  { G::bounds() } -> std::same_as<ValueBounds>;
  { G::initial_state() } -> std::same_as<typename G::State>;
  { G::is_terminal(s) } -> std::same_as<bool>;
  { G::utility1(s) } -> std::same_as<Value>;
  { G::player_to_act(s) } -> std::same_as<Player>;
  { G::is_chance_pending(s) } -> std::same_as<bool>;
  { G::legal_actions(s, actions) } -> std::same_as<void>;
  { G::outcome_set(s, a, outcomes) } -> std::same_as<void>;
  { G::apply(s, a, id) } -> std::same_as<typename G::State>;
  { G::state_key(s) } -> std::same_as<std::uint64_t>;
  { G::evaluate(s) } -> std::same_as<Value>;
  { G::to_string(s) } -> std::convertible_to<std::string>;
  { G::action_to_string(s, a) } -> std::convertible_to<std::string>;
};

// Convenience value-returning wrappers (tests and cold paths; hot paths pass
// scratch buffers to the fill-style interfaces directly).
template <Game G>
std::vector<typename G::Action> legal_actions_of(const typename G::State& s) {
  std::vector<typename G::Action> actions;
  G::legal_actions(s, actions);
  return actions;
}

template <Game G>
OutcomeSet outcome_set_of(const typename G::State& s,
                          const typename G::Action& a) {
  OutcomeSet o;
  G::outcome_set(s, a, o);
  return o;
}

// Draw one outcome id from the true distribution.
template <Game G>
std::uint64_t sample_outcome(const OutcomeSet& o, Rng& rng) {
  MCMS_CHECK(!o.empty(), "sample_outcome(): empty outcome set");
  double u = rng.next_double();
  double acc = 0.0;
  for (const OutcomeEntry& e : o.entries) {
    acc += e.p;
    if (u < acc) return e.id;
  }
  return o.entries.back().id;  // guard against accumulated rounding
}

struct PlayoutResult {
  Value utility1 = 0.0;
  int plies = 0;
  bool capped = false;  // hit the ply cap; player to act forfeited
};

// Uniform-random playout to a terminal state, with a hard ply cap. If the cap
// is hit the player to act at that point forfeits (counted via `capped`).
template <Game G>
PlayoutResult random_playout(typename G::State s, Rng& rng,
                             int ply_cap = 100000) {
  PlayoutResult r;
  std::vector<typename G::Action> actions;
  OutcomeSet outcomes;
  while (!G::is_terminal(s)) {
    if (r.plies >= ply_cap) {
      r.capped = true;
      r.utility1 = is_max_player(G::player_to_act(s)) ? G::bounds().v_min
                                                      : G::bounds().v_max;
      return r;
    }
    actions.clear();
    G::legal_actions(s, actions);
    const typename G::Action& a =
        actions[rng.next_below(static_cast<std::uint64_t>(actions.size()))];
    outcomes.clear();
    G::outcome_set(s, a, outcomes);
    s = G::apply(s, a, sample_outcome<G>(outcomes, rng));
    ++r.plies;
  }
  r.utility1 = G::utility1(s);
  return r;
}

}  // namespace mcms

#endif  // MCMS_CORE_GAME_HPP_
