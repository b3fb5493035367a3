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
//
// The load-bearing contract of the engine family: pruning must be invisible.
// Star1 and Star2 return the same doubles, bit for bit, that plain expectimax
// returns, while visiting no more nodes. Verified against an independently
// written brute-force recursion, on the real games and on adversarial
// synthetic trees (mixed max/min levels, non-dyadic chance weights, exact
// boundary leaves).

#include <catch2/catch_amalgamated.hpp>

#include "mcms/games/cant_stop.hpp"
#include "mcms/games/ewn.hpp"
#include "mcms/games/pig.hpp"
#include "mcms/oracle/stats.hpp"
#include "mcms/search/star.hpp"

namespace mcms {
namespace {

// Straight-line reference recursion: no windows, no transposition table, no
// pruning. Deliberately minimal so an engine bug cannot hide in shared code.
template <Game G>
Value brute_value(const typename G::State& s, int depth) {
  if (G::is_terminal(s)) return G::utility1(s);
  if (depth == 0) return G::evaluate(s);
  std::vector<typename G::Action> actions;
  G::legal_actions(s, actions);
  const bool maximize = is_max_player(G::player_to_act(s));
  Value best = 0.0;
  bool have = false;
  for (const auto& a : actions) {
    OutcomeSet o;
    G::outcome_set(s, a, o);
    Value acc = 0.0;
    for (std::size_t i = 0; i < o.size(); ++i) {
      acc += o[i].p * brute_value<G>(G::apply(s, a, o[i].id), depth - 1);
    }
    if (!have || (maximize ? acc > best : acc < best)) {
      best = acc;
      have = true;
    }
  }
  return best;
}

// Hash-driven random game tree. Every structural property — branching,
// actor, chance fan-out and weights, leaf values — is a pure function of the
// state id, so the same tree can be replayed by every engine. Weights are
// small integers over non-dyadic totals, and a slice of leaves sits exactly
// on the value bounds to exercise the trivial-window edge handling.
struct SyntheticTree {
  static inline std::uint64_t tree_seed = 1;
  static constexpr int kMaxPly = 6;

  struct State {
    std::uint64_t id = 0;
    int ply = 0;
    bool operator==(const State&) const = default;
  };
  struct Action {
    int i = 0;
    bool operator==(const Action&) const = default;
  };

  static std::string name() { return "synthetic"; }
  static ValueBounds bounds() { return ValueBounds{-100.0, +100.0}; }
  static State initial_state() {
    return State{mix64(tree_seed, 0xB0075EED), 0};
  }

  static std::uint64_t h(const State& s, std::uint64_t tag) {
    return mix64(s.id, tag);
  }

  static bool is_terminal(const State& s) {
    if (s.ply >= kMaxPly) return true;
    return s.ply > 0 && (h(s, 1) & 0xff) < 13;  // ~5% interior terminals
  }

  static Value in_range(std::uint64_t r) {
    const double u =
        static_cast<double>(r >> 11) * (1.0 / 9007199254740992.0);
    return -100.0 + 200.0 * u;
  }

  static Value utility1(const State& s) {
    MCMS_CHECK(is_terminal(s), "utility1() on non-terminal state");
    const std::uint64_t r = h(s, 2);
    if ((r & 7) == 0) return ((r >> 3) & 1) ? +100.0 : -100.0;
    return in_range(r);
  }

  static Player player_to_act(const State& s) {
    MCMS_CHECK(!is_terminal(s), "player_to_act() on terminal state");
    return (h(s, 3) & 1) ? Player::kOne : Player::kTwo;
  }

  static bool is_chance_pending(const State&) { return false; }

  static void legal_actions(const State& s, std::vector<Action>& out) {
    MCMS_CHECK(!is_terminal(s), "legal_actions() on terminal state");
    const int n = 1 + static_cast<int>(h(s, 4) % 3);
    for (int i = 0; i < n; ++i) out.push_back(Action{i});
  }

  static void outcome_set(const State& s, const Action& a, OutcomeSet& out) {
    MCMS_CHECK(!is_terminal(s), "outcome_set() on terminal state");
    const std::uint64_t r = mix64(h(s, 5), static_cast<std::uint64_t>(a.i));
    const int k = 1 + static_cast<int>(r % 5);
    int w[5];
    int total = 0;
    for (int j = 0; j < k; ++j) {
      w[j] = 1 + static_cast<int>((r >> (7 * j + 3)) % 9);
      total += w[j];
    }
    const ValueBounds b = bounds();
    for (int j = 0; j < k; ++j) {
      out.add(static_cast<std::uint64_t>(j),
              static_cast<double>(w[j]) / static_cast<double>(total), b);
    }
  }

  static State apply(const State& s, const Action& a, std::uint64_t outcome) {
    MCMS_CHECK(!is_terminal(s), "apply() on terminal state");
    return State{mix64(s.id, mix64(static_cast<std::uint64_t>(a.i) + 1,
                                   outcome + 1)),
                 s.ply + 1};
  }

  static std::uint64_t state_key(const State& s) {
    return mix64(s.id, static_cast<std::uint64_t>(s.ply));
  }

  static Value evaluate(const State& s) {
    if (is_terminal(s)) return utility1(s);
    const std::uint64_t r = h(s, 6);
    if ((r & 15) == 0) return ((r >> 4) & 1) ? +100.0 : -100.0;
    return in_range(r);
  }

  static std::string to_string(const State& s) {
    return "synthetic(" + std::to_string(s.id) + "@" + std::to_string(s.ply) +
           ")";
  }
  static std::string action_to_string(const State&, const Action& a) {
    return std::to_string(a.i);
  }
};

static_assert(Game<SyntheticTree>);

// Node totals per depth, aggregated across a set of positions. Probing is
// speculative, so Star2 may pay more than Star1 on an individual position
// while winning over any representative collection; the monotonicity
// contract is therefore on totals. At depth <= 2 pruning is disabled and all
// three engines must walk the identical tree, which IS asserted per
// position.
struct NodeTotals {
  std::uint64_t exp = 0;
  std::uint64_t star1 = 0;
  std::uint64_t star2 = 0;
};

// Runs all three engines on one position and asserts the family contract.
template <Game G>
void check_position(const typename G::State& s, int max_depth,
                    bool against_brute, std::vector<NodeTotals>* totals) {
  auto exp_engine = make_expectimax<G>();
  auto star1_engine = make_star1<G>();
  auto star2_engine = make_star2<G>();
  for (int d = 1; d <= max_depth; ++d) {
    const Value ve = exp_engine.value_at_depth(s, d);
    const std::uint64_t ne = exp_engine.last_nodes();
    const Value v1 = star1_engine.value_at_depth(s, d);
    const std::uint64_t n1 = star1_engine.last_nodes();
    const Value v2 = star2_engine.value_at_depth(s, d);
    const std::uint64_t n2 = star2_engine.last_nodes();
    REQUIRE(v1 == ve);  // bit-identical, not just close
    REQUIRE(v2 == ve);
    if (d <= 2) {
      REQUIRE(n1 == ne);
      REQUIRE(n2 == ne);
    }
    if (totals != nullptr) {
      auto& t = (*totals)[static_cast<std::size_t>(d - 1)];
      t.exp += ne;
      t.star1 += n1;
      t.star2 += n2;
    }
    if (against_brute) {
      const Value vb = brute_value<G>(s, d);
      REQUIRE(ve == Catch::Approx(vb).margin(1e-12));
    }
  }
}

void check_totals(const std::vector<NodeTotals>& totals) {
  for (std::size_t i = 0; i < totals.size(); ++i) {
    REQUIRE(totals[i].star1 <= totals[i].exp);
    REQUIRE(totals[i].star2 <= totals[i].star1);
  }
}

TEST_CASE("pruned engines are exact on synthetic trees", "[star][synthetic]") {
  int pruned_somewhere = 0;
  std::vector<NodeTotals> totals(4);
  for (std::uint64_t t = 1; t <= 150; ++t) {
    SyntheticTree::tree_seed = t;
    const auto root = SyntheticTree::initial_state();
    check_position<SyntheticTree>(root, 4, /*against_brute=*/true, &totals);

    auto exp_engine = make_expectimax<SyntheticTree>();
    auto star2_engine = make_star2<SyntheticTree>();
    exp_engine.value_at_depth(root, 4);
    star2_engine.value_at_depth(root, 4);
    if (star2_engine.last_nodes() < exp_engine.last_nodes()) {
      ++pruned_somewhere;
    }
  }
  // Star1 never re-expands work except through the rare fail-soft re-search,
  // so its totals stay under expectimax even on these adversarial shapes.
  // Star2's probe overhead is only claimed to amortize on the dice games'
  // regular trees; random 1-3 way branching with random actors is exactly
  // the terrain the probe gates call unprofitable, so no aggregate claim is
  // made for it here.
  for (const auto& t : totals) REQUIRE(t.star1 <= t.exp);
  // The node inequalities must not be vacuous: Star2 has to actually cut.
  REQUIRE(pruned_somewhere > 50);
}

TEST_CASE("pruned engines are exact on the dice games", "[star][games]") {
  SECTION("pig") {
    std::vector<NodeTotals> totals(4);
    const auto states = collect_states<Pig>(30, 11);
    for (const auto& s : states) check_position<Pig>(s, 4, true, &totals);
    check_totals(totals);
  }
  SECTION("ewn") {
    std::vector<NodeTotals> totals(4);
    const auto states = collect_states<Ewn>(30, 12);
    for (const auto& s : states) check_position<Ewn>(s, 4, true, &totals);
    check_totals(totals);
    // EWN has the regular alternating shape probing was built for: Star2's
    // savings must be real, not just non-negative.
    REQUIRE(totals[3].star2 < (totals[3].star1 / 100) * 95);
  }
  SECTION("cantstop") {
    std::vector<NodeTotals> totals(3);
    const auto states = collect_states<CantStop>(12, 13);
    for (const auto& s : states) check_position<CantStop>(s, 3, true, &totals);
    check_totals(totals);
  }
}

TEST_CASE("the transposition table changes node counts, never values",
          "[star][tt]") {
  const auto states = collect_states<Pig>(20, 21);
  auto with_tt = make_star2<Pig>(true);
  auto without_tt = make_star2<Pig>(false);
  for (const auto& s : states) {
    for (int d = 1; d <= 4; ++d) {
      REQUIRE(with_tt.value_at_depth(s, d) == without_tt.value_at_depth(s, d));
    }
  }
}

TEST_CASE("search() reports the depth-consistent value and a legal move",
          "[star][search]") {
  const auto states = collect_states<Ewn>(8, 31);
  auto star2_engine = make_star2<Ewn>();
  auto exp_engine = make_expectimax<Ewn>();
  for (const auto& s : states) {
    star2_engine.clear_tt();
    const auto res = star2_engine.search(s, DepthBudget::depth(3));
    REQUIRE_FALSE(res.budget_starved);
    REQUIRE(res.completed_depth == 3);
    const auto actions = legal_actions_of<Ewn>(s);
    REQUIRE(std::find(actions.begin(), actions.end(), res.best_action) !=
            actions.end());
    // The reported value is the depth-3 root value.
    REQUIRE(res.value == exp_engine.value_at_depth(s, 3));
  }
}

TEST_CASE("node budgets starve gracefully", "[star][budget]") {
  const auto s = Pig::initial_state();
  auto engine = make_star2<Pig>();
  const auto res = engine.search(s, DepthBudget::nodes(1, 10));
  REQUIRE(res.budget_starved);
  REQUIRE(res.completed_depth == 0);
  const auto actions = legal_actions_of<Pig>(s);
  REQUIRE(res.best_action == actions[0]);

  const auto rich = engine.search(s, DepthBudget::nodes(200000, 10));
  REQUIRE_FALSE(rich.budget_starved);
  REQUIRE(rich.completed_depth >= 3);
  // The node that trips the budget is itself counted, hence the +1.
  REQUIRE(rich.nodes_visited <= 200001);
}

}  // namespace
}  // namespace mcms
