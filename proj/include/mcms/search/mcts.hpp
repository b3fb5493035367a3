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

#ifndef MCMS_SEARCH_MCTS_HPP_
#define MCMS_SEARCH_MCTS_HPP_

#include <cmath>
#include <cstdint>
#include <vector>

#include "mcms/core/game.hpp"
#include "mcms/search/common.hpp"

namespace mcms {

// Number of children a progressively widened node may have after v visits.
inline std::uint64_t dpw_limit(std::uint64_t visits, double c2, double alpha) {
  MCMS_CHECK(c2 > 0.0 && alpha >= 0.0, "bad widening parameters");
  if (visits == 0) return 1;
  const double k = std::ceil(c2 * std::pow(static_cast<double>(visits), alpha));
  if (k < 1.0) return 1;
  if (k > 9e18) return ~std::uint64_t{0};
  return static_cast<std::uint64_t>(k);
}

// UCT with double progressive widening.
//
// Tree shape: decision nodes hold per-action edges; each visited edge owns a
// chance node storing the outcomes seen so far. One new decision node is
// created per simulation; a simulation that reaches a node with zero visits
// finishes with a rollout from there (rollout_len uniform-random plies, then
// the heuristic evaluation; terminal states return their utility).
//
// Selection: among the first k = ceil(c2 * visits^alpha) actions in static
// move order (all actions when widening is off), unvisited edges first (in
// order), otherwise maximal UCB1 with mean values normalized into [0, 1] and
// the exploration constant given in raw value units. Chance descent: while a
// chance node holds fewer than ceil(c2 * visits^alpha) outcomes, sample the
// true distribution and admit novel outcomes; otherwise sample among stored
// outcomes weighted by their true probabilities. The final move is the most
// visited root edge, ties to the first in static order.
//
// All values propagate from player 1's perspective; the node budget counts
// simulations (one tree node per simulation).
template <Game G>
class MctsSearch {
 public:
  using State = typename G::State;
  using Action = typename G::Action;

  struct Options {
    double c1 = 50.0;      // exploration constant, raw value units
    int rollout_len = 0;   // random plies before cutting off to evaluate()
    bool dpw = true;
    double c2 = 5.0;       // widening scale
    double alpha = 0.2;    // widening exponent
    std::uint64_t seed = 0;
  };

  struct Stats {
    std::uint64_t simulations = 0;
    std::uint64_t decision_widening_violations = 0;
    std::uint64_t chance_widening_violations = 0;
    std::uint64_t max_chance_stored = 0;
  };

  explicit MctsSearch(const Options& opt)
      : opt_(opt), vmin_(G::bounds().v_min), vmax_(G::bounds().v_max) {}

  SearchResult<Action> search(const State& root, const DepthBudget& budget,
                              std::uint64_t salt = 0) {
    MCMS_CHECK(!G::is_terminal(root), "search() on terminal state");
    rng_ = Rng(mix64(opt_.seed, salt));
    clock_.reset(budget);
    stats_ = Stats{};
    nodes_.clear();
    chance_.clear();
    const int root_id = make_node(root);
    try {
      while (true) {
        clock_.tick();  // one simulation == one budget unit
        simulate(root_id);
        ++stats_.simulations;
      }
    } catch (const BudgetExhausted&) {
    }
    SearchResult<Action> result;
    const Node& r = nodes_[root_id];
    result.best_action = r.actions[0];
    result.best_action_index = 0;
    result.nodes_visited = stats_.simulations;
    result.completed_depth = 0;
    result.budget_starved = stats_.simulations == 0;
    std::uint64_t best_visits = 0;
    for (int i = 0; i < static_cast<int>(r.edges.size()); ++i) {
      if (r.edges[i].visits > best_visits) {
        best_visits = r.edges[i].visits;
        result.best_action = r.actions[i];
        result.best_action_index = i;
        result.value = r.edges[i].total / static_cast<double>(
                                              r.edges[i].visits);
      }
    }
    return result;
  }

  const Stats& stats() const { return stats_; }
  void set_seed(std::uint64_t seed) { opt_.seed = seed; }

 private:
  struct Edge {
    std::uint64_t visits = 0;
    double total = 0.0;
    int chance = -1;
  };
  struct Node {
    State state;
    std::vector<Action> actions;
    std::vector<Edge> edges;
    std::uint64_t visits = 0;
    double total = 0.0;
    bool terminal = false;
    Value util = 0.0;
  };
  struct StoredOutcome {
    std::uint64_t id;
    double p;       // true probability
    int child;
  };
  struct ChanceNode {
    std::vector<StoredOutcome> stored;
    double stored_p = 0.0;
    std::uint64_t visits = 0;
  };

  int make_node(const State& s) {
    Node n;
    n.state = s;
    n.terminal = G::is_terminal(s);
    if (n.terminal) {
      n.util = G::utility1(s);
    } else {
      G::legal_actions(s, n.actions);
      n.edges.assign(n.actions.size(), Edge{});
    }
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  void simulate(int root_id) {
    path_nodes_.clear();
    path_edges_.clear();
    int cur = root_id;
    Value leaf_value = 0.0;
    while (true) {
      Node& nd = nodes_[cur];
      path_nodes_.push_back(cur);
      if (nd.terminal) {
        leaf_value = nd.util;
        break;
      }
      if (nd.visits == 0) {  // fresh node: roll out, expand no further
        leaf_value = rollout(nd.state);
        break;
      }
      const int pick = select_edge(nd);
      path_edges_.push_back(Pick{cur, pick});
      Edge& edge = nodes_[cur].edges[pick];
      if (edge.chance < 0) {
        edge.chance = static_cast<int>(chance_.size());
        chance_.push_back(ChanceNode{});
      }
      cur = chance_step(cur, pick);
    }
    // Backpropagate (player-1 perspective throughout).
    for (int id : path_nodes_) {
      ++nodes_[id].visits;
      nodes_[id].total += leaf_value;
    }
    for (const Pick& p : path_edges_) {
      Edge& e = nodes_[p.node].edges[p.edge];
      ++e.visits;
      e.total += leaf_value;
    }
  }

  // UCB1 over the progressively widened action prefix.
  int select_edge(const Node& nd) {
    const int n = static_cast<int>(nd.actions.size());
    int avail = n;
    if (opt_.dpw) {
      const std::uint64_t k = dpw_limit(nd.visits, opt_.c2, opt_.alpha);
      if (k < static_cast<std::uint64_t>(n)) avail = static_cast<int>(k);
    }
    for (int i = 0; i < avail; ++i) {
      if (nd.edges[i].visits == 0) return audit_pick(i, avail);
    }
    const bool maximize = is_max_player(G::player_to_act(nd.state));
    const double scale = vmax_ - vmin_;
    const double log_n = std::log(static_cast<double>(nd.visits));
    int best = 0;
    double best_ucb = -1.0;
    for (int i = 0; i < avail; ++i) {
      const Edge& e = nd.edges[i];
      const double mean = e.total / static_cast<double>(e.visits);
      double q = (mean - vmin_) / scale;
      if (!maximize) q = 1.0 - q;
      const double ucb =
          q + (opt_.c1 / scale) *
                  std::sqrt(log_n / static_cast<double>(e.visits));
      if (ucb > best_ucb) {
        best_ucb = ucb;
        best = i;
      }
    }
    return audit_pick(best, avail);
  }

  int audit_pick(int idx, int avail) {
    if (idx >= avail) ++stats_.decision_widening_violations;
    return idx;
  }

  // One chance transition along the picked edge. Returns the next decision
  // node (created here when a novel outcome is admitted).
  int chance_step(int node_id, int pick) {
    Node& nd = nodes_[node_id];
    ChanceNode& cn = chance_[nodes_[node_id].edges[pick].chance];
    ++cn.visits;
    std::uint64_t limit = ~std::uint64_t{0};
    if (opt_.dpw) limit = dpw_limit(cn.visits, opt_.c2, opt_.alpha);
    outcome_scratch_.clear();
    G::outcome_set(nd.state, nd.actions[pick], outcome_scratch_);
    int next = -1;
    if (cn.stored.size() < limit) {
      // Room to widen: draw from the true distribution, admit if novel.
      const std::uint64_t id = sample_outcome<G>(outcome_scratch_, rng_);
      int found = -1;
      for (int i = 0; i < static_cast<int>(cn.stored.size()); ++i) {
        if (cn.stored[i].id == id) {
          found = i;
          break;
        }
      }
      if (found >= 0) {
        next = cn.stored[found].child;
      } else {
        double p = 0.0;
        for (const OutcomeEntry& e : outcome_scratch_.entries) {
          if (e.id == id) {
            p = e.p;
            break;
          }
        }
        const State child_state =
            G::apply(nd.state, nd.actions[pick], id);
        const int child = make_node(child_state);  // may reallocate nodes_
        ChanceNode& cn2 = chance_[nodes_[node_id].edges[pick].chance];
        cn2.stored.push_back(StoredOutcome{id, p, child});
        cn2.stored_p += p;
        next = child;
      }
    } else {
      // Saturated: sample among stored outcomes by renormalized true p.
      const ChanceNode& c = cn;
      const double u = rng_.next_double() * c.stored_p;
      double acc = 0.0;
      next = c.stored.back().child;
      for (const StoredOutcome& so : c.stored) {
        acc += so.p;
        if (u < acc) {
          next = so.child;
          break;
        }
      }
    }
    const ChanceNode& after = chance_[nodes_[node_id].edges[pick].chance];
    if (opt_.dpw && after.stored.size() > limit) {
      ++stats_.chance_widening_violations;
    }
    if (after.stored.size() > stats_.max_chance_stored) {
      stats_.max_chance_stored = after.stored.size();
    }
    return next;
  }

  // rollout_len uniform-random plies, then the heuristic (terminal cuts off
  // earlier with its utility).
  Value rollout(State s) {
    for (int i = 0; i < opt_.rollout_len; ++i) {
      if (G::is_terminal(s)) return G::utility1(s);
      action_scratch_.clear();
      G::legal_actions(s, action_scratch_);
      const Action& a = action_scratch_[rng_.next_below(
          static_cast<std::uint64_t>(action_scratch_.size()))];
      outcome_scratch_.clear();
      G::outcome_set(s, a, outcome_scratch_);
      s = G::apply(s, a, sample_outcome<G>(outcome_scratch_, rng_));
    }
    return G::evaluate(s);
  }

  struct Pick {
    int node;
    int edge;
  };

  Options opt_;
  Value vmin_, vmax_;
  Rng rng_;
  BudgetClock clock_;
  Stats stats_;
  std::vector<Node> nodes_;
  std::vector<ChanceNode> chance_;
  std::vector<int> path_nodes_;
  std::vector<Pick> path_edges_;
  OutcomeSet outcome_scratch_;
  std::vector<Action> action_scratch_;
};

}  // namespace mcms

#endif  // MCMS_SEARCH_MCTS_HPP_
