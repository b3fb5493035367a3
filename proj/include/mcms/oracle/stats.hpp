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

#ifndef MCMS_ORACLE_STATS_HPP_
#define MCMS_ORACLE_STATS_HPP_

#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

#include "mcms/harness/csv.hpp"
#include "mcms/harness/engine.hpp"
#include "mcms/oracle/pig_values.hpp"

namespace mcms {

// Distinct decision states drawn from random playouts; every returned state
// is reachable by construction, non-terminal, and not chance-pending. Order
// is the deterministic first-visit order.
template <Game G>
std::vector<typename G::State> collect_states(int n, std::uint64_t seed,
                                              int min_ply = 0) {
  std::vector<typename G::State> out;
  std::unordered_set<std::uint64_t> seen;
  Rng rng(mix64(seed, 0xC011EC7));
  std::vector<typename G::Action> actions;
  OutcomeSet outcomes;
  long long playouts = 0;
  const long long max_playouts = 2000ll * n + 1000;
  while (static_cast<int>(out.size()) < n) {
    MCMS_CHECK(++playouts <= max_playouts,
               "collect_states: the game yields too few distinct states");
    typename G::State s = G::initial_state();
    int ply = 0;
    while (!G::is_terminal(s) && static_cast<int>(out.size()) < n) {
      if (!G::is_chance_pending(s) && ply >= min_ply) {
        const std::uint64_t key = G::state_key(s);
        if (seen.insert(key).second) out.push_back(s);
      }
      actions.clear();
      G::legal_actions(s, actions);
      const auto a =
          actions[static_cast<std::size_t>(rng.next_below(actions.size()))];
      outcomes.clear();
      G::outcome_set(s, a, outcomes);
      s = G::apply(s, a, sample_outcome<G>(outcomes, rng));
      ++ply;
    }
  }
  return out;
}

// Estimator quality against the solved Pig table. Each engine is run `runs`
// times per state with independent per-run seeds; deterministic engines
// simply repeat themselves (zero variance by construction).
//
// Per state: bias = mean error, variance and MSE are population moments of
// the error sample, so MSE = variance + bias^2 holds algebraically; regret
// is the oracle's Q-shortfall of the chosen action. Reported figures are
// means over states (|bias| is the mean of per-state absolute biases).
struct StatsRow {
  std::string name;
  double mse = 0.0;
  double variance = 0.0;
  double abs_bias = 0.0;
  double regret = 0.0;
  double max_identity_gap = 0.0;  // max relative |mse - var - bias^2|
};

struct StatsReport {
  int states = 0;
  int runs = 0;
  std::uint64_t seed = 0;
  DepthBudget budget;
  std::vector<StatsRow> rows;
};

inline StatsReport pig_estimator_stats(
    const PigOracle& oracle, const std::vector<std::string>& engine_specs,
    int n_states, int runs, const DepthBudget& budget, std::uint64_t seed) {
  MCMS_CHECK(n_states >= 1 && runs >= 1, "empty stats request");
  StatsReport report;
  report.states = n_states;
  report.runs = runs;
  report.seed = seed;
  report.budget = budget;

  Rng state_rng(mix64(seed, 0x57A7E5));
  std::vector<Pig::State> states;
  states.reserve(n_states);
  for (int i = 0; i < n_states; ++i) {
    states.push_back(oracle.sample_reachable(state_rng));
  }

  std::vector<typename Pig::Action> actions;
  for (const std::string& spec : engine_specs) {
    auto engine = make_engine<Pig>(spec);
    StatsRow row;
    row.name = spec;
    std::vector<double> errors(runs);
    double regret_sum = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const Pig::State& s = states[i];
      const double v_true = oracle.value(s);
      for (int r = 0; r < runs; ++r) {
        engine->new_game(mix64(seed, static_cast<std::uint64_t>(i + 1),
                               static_cast<std::uint64_t>(r + 1)));
        const auto res = engine->choose(s, budget, 0);
        MCMS_CHECK(!res.budget_starved,
                   "stats budget too small to finish depth 1");
        actions.clear();
        Pig::legal_actions(s, actions);
        const auto chosen = actions[res.best_action_index];
        errors[r] = res.value - v_true;
        regret_sum += oracle.regret(s, chosen);
      }
      double bias = 0.0, mse = 0.0;
      for (double e : errors) {
        bias += e;
        mse += e * e;
      }
      bias /= runs;
      mse /= runs;
      double var = 0.0;
      for (double e : errors) var += (e - bias) * (e - bias);
      var /= runs;
      row.mse += mse;
      row.variance += var;
      row.abs_bias += std::fabs(bias);
      const double gap = std::fabs(mse - (var + bias * bias));
      const double rel = gap / (mse > 1e-12 ? mse : 1.0);
      if (rel > row.max_identity_gap) row.max_identity_gap = rel;
    }
    row.mse /= states.size();
    row.variance /= states.size();
    row.abs_bias /= states.size();
    row.regret = regret_sum / (static_cast<double>(states.size()) * runs);
    report.rows.push_back(row);
  }
  return report;
}

// Schema mcms.stats.v1: one row per estimator.
inline std::string stats_csv(const StatsReport& r) {
  const std::string budget_text = budget_to_string(r.budget);
  std::string out =
      "schema,engine,states,runs,budget,seed,mse,variance,abs_bias,regret,"
      "max_identity_gap\n";
  for (const StatsRow& row : r.rows) {
    out += "mcms.stats.v1," + csv_field(row.name) + "," + csv_int(r.states) +
           "," + csv_int(r.runs) + "," + budget_text + "," + csv_u64(r.seed) +
           "," + csv_double(row.mse) + "," + csv_double(row.variance) + "," +
           csv_double(row.abs_bias) + "," + csv_double(row.regret) + "," +
           csv_double(row.max_identity_gap) + "\n";
  }
  return out;
}

}  // namespace mcms

#endif  // MCMS_ORACLE_STATS_HPP_
