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

#ifndef MCMS_SEARCH_STAR_HPP_
#define MCMS_SEARCH_STAR_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "mcms/core/game.hpp"
#include "mcms/search/common.hpp"

namespace mcms {

enum class PruneKind { kNone, kStar1, kStar2 };

// Outcome source: the full true distribution.
template <Game G>
struct FullOutcomeSource {
  void fill(const typename G::State& s, const typename G::Action& a,
            int /*static_index*/, int /*remaining_depth*/,
            std::uint64_t /*seed*/, OutcomeSet& /*scratch*/,
            OutcomeSet& out) const {
    out.clear();
    G::outcome_set(s, a, out);
  }
};

// Outcome source: c outcomes sampled with replacement from the true
// distribution, each weighted 1/c, in draw order. The sample is a pure
// function of (state key, static action index, remaining depth, seed), so
// any revisit of the same chance node — other search phase, transposition,
// re-expansion — sees the identical sampled set. A single-outcome true
// distribution collapses to that outcome with weight 1, which preserves the
// estimate exactly (all c draws would be the same outcome) and keeps
// deterministic actions free of redundant work and float noise.
template <Game G>
struct SampledOutcomeSource {
  int c = 1;

  explicit SampledOutcomeSource(int width) : c(width) {
    MCMS_CHECK(width >= 1, "sample width must be >= 1");
  }

  void fill(const typename G::State& s, const typename G::Action& a,
            int static_index, int remaining_depth, std::uint64_t seed,
            OutcomeSet& truth, OutcomeSet& out) const {
    truth.clear();
    G::outcome_set(s, a, truth);
    out.clear();
    const ValueBounds b = G::bounds();
    if (truth.size() == 1) {
      out.add(truth[0].id, 1.0, b);
      return;
    }
    Rng rng(subseed(G::state_key(s), static_cast<std::uint64_t>(static_index),
                    static_cast<std::uint64_t>(remaining_depth), seed));
    const double w = 1.0 / static_cast<double>(c);
    const std::size_t n = truth.size();
    for (int i = 0; i < c; ++i) {
      const double u = rng.next_double();
      double acc = 0.0;
      std::uint64_t id = truth[n - 1].id;
      for (std::size_t j = 0; j < n; ++j) {
        acc += truth[j].p;
        if (u < acc) {
          id = truth[j].id;
          break;
        }
      }
      out.add(id, w, b);
    }
  }
};

// Depth-limited *-minimax over a Game, parameterized by pruning kind and
// outcome source. One engine implements expectimax (kNone), Star1 and Star2;
// the sampled source turns each of them into its Monte Carlo counterpart.
//
// Numeric contract, relied on by tests: whenever a recursive call returns a
// value strictly inside its (alpha, beta) window, that value equals the
// no-pruning value of the same (sub)tree bit-for-bit, because exact values
// are only ever produced by the same left-to-right  sum += p * v  loop the
// plain engine runs. Cut returns are one-sided bounds and always land on or
// outside the window edge they violated. Cuts are suppressed against trivial
// window edges (alpha == v_min, beta == v_max), so a full-window search never
// returns a bound; in the rare float corner where a child fails against a
// non-trivial edge but the pruning condition doesn't fire, the child is
// re-searched with the full window to restore exactness.
template <Game G, class Source>
class StarSearch {
 public:
  using State = typename G::State;
  using Action = typename G::Action;

  struct Options {
    PruneKind prune = PruneKind::kNone;
    // No pruning while remaining depth <= this (cheap subtrees aren't worth
    // the bound bookkeeping, and it keeps shallow results engine-agnostic).
    int shallow_prune_cutoff = 2;
    bool use_tt = true;
    int tt_bits = 20;
    std::uint64_t seed = 0;  // sampling seed base (sampled sources)
  };

  StarSearch(const Options& opt, Source source)
      : opt_(opt),
        source_(std::move(source)),
        tt_(opt.use_tt ? opt.tt_bits : 1),
        vmin_(G::bounds().v_min),
        vmax_(G::bounds().v_max) {}

  // Iterative deepening under a budget. If the budget dies before depth 1
  // completes, the first legal action is returned with budget_starved set.
  SearchResult<Action> search(const State& root, const DepthBudget& budget,
                              std::uint64_t salt = 0) {
    MCMS_CHECK(!G::is_terminal(root), "search() on terminal state");
    clock_.reset(budget);
    eff_seed_ = mix64(opt_.seed, salt);
    ensure_frames(budget.max_depth);
    SearchResult<Action> result;
    {
      std::vector<Action> actions;
      G::legal_actions(root, actions);
      result.best_action = actions[0];
      result.best_action_index = 0;
    }
    result.budget_starved = true;
    for (int d = 1; d <= budget.max_depth; ++d) {
      RootIteration it;
      try {
        it = run_root(root, d);
      } catch (const BudgetExhausted&) {
        break;
      }
      result.value = it.value;
      result.best_action = it.action;
      result.best_action_index = it.action_index;
      result.completed_depth = d;
      result.budget_starved = false;
    }
    result.nodes_visited = clock_.nodes();
    return result;
  }

  // Root value of a fixed-depth search, full window, unlimited nodes.
  Value value_at_depth(const State& root, int depth, std::uint64_t salt = 0) {
    return value_in_window(root, depth, SearchWindow{vmin_, vmax_}, salt);
  }

  // Fixed-depth search against an explicit window: exact inside, a one-sided
  // bound on or outside a violated edge.
  Value value_in_window(const State& root, int depth, SearchWindow w,
                        std::uint64_t salt = 0) {
    MCMS_CHECK(depth >= 0, "negative depth");
    clock_.reset(DepthBudget::depth(depth));
    eff_seed_ = mix64(opt_.seed, salt);
    ensure_frames(depth);
    return dvalue(root, 0, depth, w.alpha, w.beta, false);
  }

  std::uint64_t last_nodes() const { return clock_.nodes(); }
  void clear_tt() { tt_.clear(); }
  void set_seed(std::uint64_t seed) { opt_.seed = seed; }
  const Options& options() const { return opt_; }

 private:
  struct Frame {
    std::vector<Action> actions;
    std::vector<Action> probe_actions;  // probe-gate scratch, no node cost
    OutcomeSet outcomes;
    OutcomeSet truth;
  };

  struct RootIteration {
    Value value = 0.0;
    Action action{};
    int action_index = -1;
  };

  void ensure_frames(int depth) {
    if (static_cast<int>(frames_.size()) < depth + 2) {
      frames_.resize(depth + 2);
    }
  }

  bool prune_at(int depth) const {
    return opt_.prune != PruneKind::kNone && depth > opt_.shallow_prune_cutoff;
  }

  // Search order: TT move (when present and legal) first, then static order.
  static int order_index(int k, int tt_idx) {
    if (tt_idx < 0) return k;
    if (k == 0) return tt_idx;
    return (k - 1 < tt_idx) ? k - 1 : k;
  }

  int find_tt_index(const std::vector<Action>& actions,
                    std::uint64_t key) const {
    if (!opt_.use_tt) return -1;
    const Action* m = tt_.probe(key);
    if (m == nullptr) return -1;
    for (int i = 0; i < static_cast<int>(actions.size()); ++i) {
      if (actions[i] == *m) return i;
    }
    return -1;
  }

  // Decision node. probe_one restricts the search to the first action in
  // search order (Star2 probing); the restriction does not propagate.
  Value dvalue(const State& s, int ply, int depth, Value alpha, Value beta,
               bool probe_one) {
    clock_.tick();
    if (G::is_terminal(s)) return G::utility1(s);
    if (depth == 0) return G::evaluate(s);
    Frame& f = frames_[ply];
    f.actions.clear();
    G::legal_actions(s, f.actions);
    const int n = static_cast<int>(f.actions.size());
    const bool maximize = is_max_player(G::player_to_act(s));
    const std::uint64_t key = G::state_key(s);
    const int tt_idx = find_tt_index(f.actions, key);
    const bool pruning = prune_at(depth);
    Value a_run = pruning ? alpha : vmin_;
    Value b_run = pruning ? beta : vmax_;
    Value best = 0.0;
    bool have = false;
    int best_idx = -1;
    const int count = probe_one ? 1 : n;
    for (int k = 0; k < count; ++k) {
      const int idx = order_index(k, tt_idx);
      const Value v =
          cvalue(s, f.actions[idx], idx, ply, depth, a_run, b_run);
      if (maximize) {
        if (!have || v > best) {
          best = v;
          best_idx = idx;
          have = true;
        }
        if (pruning) {
          if (best > a_run) a_run = best;
          // Cut only against a real (non-trivial) beta edge; see the class
          // comment for why v == v_max must fall through to completion.
          if (beta < vmax_ && v >= beta) {
            if (opt_.use_tt && !probe_one) tt_.store(key, f.actions[idx]);
            return v;
          }
        }
      } else {
        if (!have || v < best) {
          best = v;
          best_idx = idx;
          have = true;
        }
        if (pruning) {
          if (best < b_run) b_run = best;
          if (alpha > vmin_ && v <= alpha) {
            if (opt_.use_tt && !probe_one) tt_.store(key, f.actions[idx]);
            return v;
          }
        }
      }
    }
    if (opt_.use_tt && !probe_one && best_idx >= 0) {
      tt_.store(key, f.actions[best_idx]);
    }
    return best;
  }

  // Chance node behind action a (static move-order index static_idx).
  Value cvalue(const State& s, const Action& a, int static_idx, int ply,
               int depth, Value alpha, Value beta) {
    Frame& f = frames_[ply];
    source_.fill(s, a, static_idx, depth, eff_seed_, f.truth, f.outcomes);
    OutcomeSet& o = f.outcomes;
    const int n = static_cast<int>(o.size());
    MCMS_CHECK(n > 0, "empty outcome set");
    if (n == 1) {  // deterministic: value passes through, window intact
      return dvalue(G::apply(s, a, o[0].id), ply + 1, depth - 1, alpha, beta,
                    false);
    }
    if (!prune_at(depth)) {
      // Canonical expectation: the one accumulation every engine shares on
      // exact paths. Entry order is the outcome set's order.
      Value acc = 0.0;
      for (int i = 0; i < n; ++i) {
        acc += o[i].p * dvalue(G::apply(s, a, o[i].id), ply + 1, depth - 1,
                               vmin_, vmax_, false);
      }
      return acc;
    }
    // Running bound sums over the entry bounds (comparisons and cut returns
    // only; exact completions always return the canonical `acc`).
    Value pess_sum = 0.0, opti_sum = 0.0;
    for (int i = 0; i < n; ++i) {
      pess_sum += o[i].p * o[i].lower;
      opti_sum += o[i].p * o[i].upper;
    }
    const bool beta_cuts = beta < vmax_;
    const bool alpha_cuts = alpha > vmin_;

    if (opt_.prune == PruneKind::kStar2 && (beta_cuts || alpha_cuts)) {
      // Probing phase: one restricted search per non-leaf entry to tighten
      // one-sided bounds; leaves resolve exactly and are not revisited.
      //
      // A probe is pure overhead unless it can trigger a cut, so three gates
      // keep it honest; all three only skip probes and never affect values.
      // Direction: probing a Max child can only raise pess_sum (a beta cut),
      // probing a Min child can only lower opti_sum (an alpha cut); skip
      // children whose direction has no live cut edge. Shape: probing was
      // designed for regular alternating trees, and on same-player chains
      // (rolling again) the probed action's subtree is repeated by the full
      // phase with nothing gained, so only opponent children are probed.
      // Cost: a probe searches one of the child's b actions, roughly 1/b of
      // the child, so children with fewer than three actions are never
      // probed — at b <= 2 the probe costs half the child or more and cannot
      // pay for itself often enough.
      const Player actor = G::player_to_act(s);
      for (int i = 0; i < n; ++i) {
        OutcomeEntry& e = o[i];
        const State child = G::apply(s, a, e.id);
        if (G::is_terminal(child) || depth == 1) {
          const Value v =
              dvalue(child, ply + 1, depth - 1, vmin_, vmax_, false);
          pess_sum += e.p * (v - e.lower);
          opti_sum += e.p * (v - e.upper);
          e.lower = e.upper = v;
        } else {
          const Player child_actor = G::player_to_act(child);
          if (child_actor == actor) continue;
          const bool child_max = is_max_player(child_actor);
          if (child_max ? !beta_cuts : !alpha_cuts) continue;
          f.probe_actions.clear();
          G::legal_actions(child, f.probe_actions);
          if (f.probe_actions.size() < 3) continue;
          const SearchWindow cw = entry_window(e, alpha, beta, pess_sum,
                                               opti_sum);
          const Value v =
              dvalue(child, ply + 1, depth - 1, cw.alpha, cw.beta, true);
          if (child_max) {
            // The probe value lower-bounds a Max child unless it failed low.
            if (v > cw.alpha && v > e.lower) {
              pess_sum += e.p * (v - e.lower);
              e.lower = v;
            }
          } else {
            if (v < cw.beta && v < e.upper) {
              opti_sum += e.p * (v - e.upper);
              e.upper = v;
            }
          }
        }
        if (beta_cuts && pess_sum >= beta) return pess_sum;
        if (alpha_cuts && opti_sum <= alpha) return opti_sum;
      }
    }

    // Full resolution (Star1's whole body; Star2's second phase). Exact child
    // values accumulate into `acc` in entry order.
    Value acc = 0.0;
    for (int i = 0; i < n; ++i) {
      OutcomeEntry& e = o[i];
      if (e.lower == e.upper) {  // resolved exactly during probing
        acc += e.p * e.lower;
        continue;
      }
      const SearchWindow cw =
          entry_window(e, alpha, beta, pess_sum, opti_sum);
      const State child = G::apply(s, a, e.id);
      Value v = dvalue(child, ply + 1, depth - 1, cw.alpha, cw.beta, false);
      // A return is a bound only if it landed on a live cut edge: fail-high
      // exists only against beta < v_max, fail-low only against alpha >
      // v_min. Classifying by the value's position alone breaks beside a
      // proven win, where alpha == beta == v_max turns a fail-low bound of
      // exactly v_max into a phantom "exact" win.
      const bool fail_high = cw.beta < vmax_ && v >= cw.beta;
      const bool fail_low = cw.alpha > vmin_ && v <= cw.alpha;
      if (!fail_high && !fail_low) {
        pess_sum += e.p * (v - e.lower);
        opti_sum += e.p * (v - e.upper);
        e.lower = e.upper = v;
        acc += e.p * v;
      } else if (fail_high) {  // fail-high: raise the entry's lower bound
        if (v > e.lower) {
          pess_sum += e.p * (v - e.lower);
          e.lower = v;
        }
        if (beta_cuts && pess_sum >= beta) return pess_sum;
        // Pruning condition didn't fire (float boundary): restore exactness
        // with a full-window re-search.
        v = dvalue(child, ply + 1, depth - 1, vmin_, vmax_, false);
        pess_sum += e.p * (v - e.lower);
        opti_sum += e.p * (v - e.upper);
        e.lower = e.upper = v;
        acc += e.p * v;
      } else {  // fail-low: drop the entry's upper bound
        if (v < e.upper) {
          opti_sum += e.p * (v - e.upper);
          e.upper = v;
        }
        if (alpha_cuts && opti_sum <= alpha) return opti_sum;
        v = dvalue(child, ply + 1, depth - 1, vmin_, vmax_, false);
        pess_sum += e.p * (v - e.lower);
        opti_sum += e.p * (v - e.upper);
        e.lower = e.upper = v;
        acc += e.p * v;
      }
      if (beta_cuts && pess_sum >= beta) return pess_sum;
      if (alpha_cuts && opti_sum <= alpha) return opti_sum;
    }
    return acc;
  }

  // Window for the child behind entry e given the enclosing window and the
  // current running bound sums (the incremental form of child_window()).
  SearchWindow entry_window(const OutcomeEntry& e, Value alpha, Value beta,
                            Value pess_sum, Value opti_sum) const {
    Value ca = (alpha - (opti_sum - e.p * e.upper)) / e.p;
    Value cb = (beta - (pess_sum - e.p * e.lower)) / e.p;
    if (ca < vmin_) ca = vmin_;
    if (cb > vmax_) cb = vmax_;
    return SearchWindow{ca, cb};
  }

  RootIteration run_root(const State& root, int depth) {
    clock_.tick();
    Frame& f = frames_[0];
    f.actions.clear();
    G::legal_actions(root, f.actions);
    const int n = static_cast<int>(f.actions.size());
    const bool maximize = is_max_player(G::player_to_act(root));
    const std::uint64_t key = G::state_key(root);
    const int tt_idx = find_tt_index(f.actions, key);
    const bool pruning = prune_at(depth);
    Value a_run = vmin_, b_run = vmax_;
    RootIteration it;
    bool have = false;
    Value best = 0.0;        // true running max/min: the reported value
    bool best_exact = false;  // whether the chosen action's value is exact
    constexpr Value kTieTol = 1e-9;
    for (int k = 0; k < n; ++k) {
      const int idx = order_index(k, tt_idx);
      const Value a_lo = pruning ? a_run : vmin_;
      const Value b_hi = pruning ? b_run : vmax_;
      const Value v = cvalue(root, f.actions[idx], idx, 0, depth, a_lo, b_hi);
      // Same live-edge rule as cvalue: a value on a saturated window edge
      // (e.g. alpha == v_max beside a proven win) is a bound, not a tie.
      const bool exact = !(b_hi < vmax_ && v >= b_hi) &&
                         !(a_lo > vmin_ && v <= a_lo);
      if (!have) {
        best = v;
        it.action = f.actions[idx];
        it.action_index = idx;
        best_exact = exact;
        have = true;
      } else if (maximize ? v > best + kTieTol : v < best - kTieTol) {
        best = v;
        it.action = f.actions[idx];
        it.action_index = idx;
        best_exact = exact;
      } else if ((maximize ? v > best : v < best)) {
        // Within tolerance but a genuine improvement: keep the incumbent
        // action (tie rule) while reporting the better value.
        best = v;
        if (exact && idx < it.action_index) {
          it.action = f.actions[idx];
          it.action_index = idx;
          best_exact = true;
        }
      } else if (maximize ? v >= best - kTieTol : v <= best + kTieTol) {
        // Tied within tolerance below the incumbent: static order wins among
        // exactly-valued actions.
        if (exact && (!best_exact || idx < it.action_index)) {
          it.action = f.actions[idx];
          it.action_index = idx;
          best_exact = true;
        }
      }
      if (pruning) {
        if (maximize) {
          if (best > a_run) a_run = best;
          // Proven win in hand: siblings can at best tie against a window
          // saturated at v_max, which yields bounds, not better moves.
          if (best_exact && best >= vmax_) break;
        } else {
          if (best < b_run) b_run = best;
          if (best_exact && best <= vmin_) break;
        }
      }
    }
    it.value = best;
    if (opt_.use_tt && it.action_index >= 0) {
      tt_.store(key, f.actions[it.action_index]);
    }
    return it;
  }

  Options opt_;
  Source source_;
  TranspositionTable<Action> tt_;
  Value vmin_, vmax_;
  BudgetClock clock_;
  std::uint64_t eff_seed_ = 0;
  std::vector<Frame> frames_;
};

// Canonical engine aliases.
template <Game G>
using ClassicStarSearch = StarSearch<G, FullOutcomeSource<G>>;
template <Game G>
using SampledStarSearch = StarSearch<G, SampledOutcomeSource<G>>;

template <Game G>
ClassicStarSearch<G> make_expectimax(bool use_tt = true) {
  typename ClassicStarSearch<G>::Options o;
  o.prune = PruneKind::kNone;
  o.use_tt = use_tt;
  return ClassicStarSearch<G>(o, FullOutcomeSource<G>{});
}

template <Game G>
ClassicStarSearch<G> make_star1(bool use_tt = true) {
  typename ClassicStarSearch<G>::Options o;
  o.prune = PruneKind::kStar1;
  o.use_tt = use_tt;
  return ClassicStarSearch<G>(o, FullOutcomeSource<G>{});
}

template <Game G>
ClassicStarSearch<G> make_star2(bool use_tt = true) {
  typename ClassicStarSearch<G>::Options o;
  o.prune = PruneKind::kStar2;
  o.use_tt = use_tt;
  return ClassicStarSearch<G>(o, FullOutcomeSource<G>{});
}

template <Game G>
SampledStarSearch<G> make_sampled(PruneKind prune, int c, std::uint64_t seed,
                                  bool use_tt = true) {
  typename SampledStarSearch<G>::Options o;
  o.prune = prune;
  o.seed = seed;
  o.use_tt = use_tt;
  return SampledStarSearch<G>(o, SampledOutcomeSource<G>(c));
}

// Convenience one-shot root values (tests and small tools).
template <Game G>
Value expectimax_value(const typename G::State& s, int depth) {
  auto e = make_expectimax<G>(false);
  return e.value_at_depth(s, depth);
}

template <Game G>
Value star1_value(const typename G::State& s, int depth,
                  SearchWindow w) {
  auto e = make_star1<G>(false);
  return e.value_in_window(s, depth, w);
}

template <Game G>
Value star2_value(const typename G::State& s, int depth,
                  SearchWindow w) {
  auto e = make_star2<G>(false);
  return e.value_in_window(s, depth, w);
}

}  // namespace mcms

#endif  // MCMS_SEARCH_STAR_HPP_
