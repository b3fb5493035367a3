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

#ifndef MCMS_HARNESS_THEOREM_HPP_
#define MCMS_HARNESS_THEOREM_HPP_

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mcms/harness/csv.hpp"
#include "mcms/oracle/pig_values.hpp"
#include "mcms/search/sampling.hpp"

namespace mcms {

// Empirical check of the finite-sample guarantee on Pig: for states drawn
// from the solved reachable set, compare the sampled depth-d root value
// against the exact full-width depth-d value over many independent sampling
// trials, and tabulate how often |error| <= lambda * d next to the
// theoretical lower bound on that probability.
struct TheoremCheckConfig {
  int states = 100;
  int trials = 1000;
  std::vector<int> widths = {2, 5, 10, 20, 40, 80};
  std::vector<double> lambdas = {20.0, 40.0, 60.0, 80.0, 100.0};
  int depth = 1;
  std::uint64_t seed = 7;
};

struct TheoremRow {
  int c = 0;
  double lambda = 0.0;
  int depth = 1;
  double bound = 0.0;      // theoretical lower bound on coverage
  bool vacuous = false;    // bound <= 0
  double coverage = 0.0;   // empirical fraction within lambda * d
  std::int64_t within = 0;
  std::int64_t total = 0;
};

struct TheoremReport {
  TheoremCheckConfig config;
  std::vector<TheoremRow> rows;
  // Adjacent-width coverage drops at fixed lambda that are statistically
  // significant at the one-sided 0.01 level. Empty means monotone.
  std::vector<std::string> monotonicity_violations;
};

// One-sided two-proportion z-test that coverage dropped from p1 (n1) to
// p2 (n2); returns true when the drop is significant at alpha = 0.01.
inline bool coverage_drop_significant(double p1, std::int64_t n1, double p2,
                                      std::int64_t n2) {
  if (n1 <= 0 || n2 <= 0) return false;
  if (p2 >= p1) return false;
  const double pooled = (p1 * static_cast<double>(n1) +
                         p2 * static_cast<double>(n2)) /
                        static_cast<double>(n1 + n2);
  const double se = std::sqrt(pooled * (1.0 - pooled) *
                              (1.0 / static_cast<double>(n1) +
                               1.0 / static_cast<double>(n2)));
  if (se == 0.0) return false;
  const double z = (p1 - p2) / se;
  return z > 2.3263478740408408;  // one-sided 99% quantile
}

inline TheoremReport check_theorem(const PigOracle& oracle,
                                   const TheoremCheckConfig& cfg) {
  MCMS_CHECK(cfg.depth >= 0 && cfg.depth <= 2, "depth must be in 0..2");
  MCMS_CHECK(cfg.states >= 1 && cfg.trials >= 1, "empty theorem check");
  TheoremReport report;
  report.config = cfg;

  Rng state_rng(mix64(cfg.seed, 0x57A7E5));
  std::vector<Pig::State> states;
  states.reserve(cfg.states);
  for (int i = 0; i < cfg.states; ++i) {
    states.push_back(oracle.sample_reachable(state_rng));
  }

  // Exact depth-d values, one per state.
  auto exact = make_expectimax<Pig>();
  std::vector<double> truth(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    truth[i] = cfg.depth == 0 ? Pig::evaluate(states[i])
                              : exact.value_at_depth(states[i], cfg.depth);
  }

  for (int c : cfg.widths) {
    auto sampled = make_expss<Pig>(SamplingParams{c, cfg.seed});
    std::vector<double> errors;
    errors.reserve(states.size() * static_cast<std::size_t>(cfg.trials));
    for (std::size_t i = 0; i < states.size(); ++i) {
      for (int t = 0; t < cfg.trials; ++t) {
        const double v =
            cfg.depth == 0
                ? Pig::evaluate(states[i])
                : sampled.value_at_depth(
                      states[i], cfg.depth,
                      mix64(static_cast<std::uint64_t>(i + 1),
                            static_cast<std::uint64_t>(t + 1)));
        errors.push_back(std::fabs(v - truth[i]));
      }
    }
    for (double lambda : cfg.lambdas) {
      TheoremRow row;
      row.c = c;
      row.lambda = lambda;
      row.depth = cfg.depth;
      TheoremParams tp;
      tp.c = c;
      tp.lambda = lambda;
      tp.depth = std::max(1, cfg.depth);
      tp.v_max = 100.0;
      tp.branching = 2;  // Pig always offers roll or stop
      row.bound = cfg.depth == 0 ? 1.0 : theorem_bound(tp);
      row.vacuous = row.bound <= 0.0;
      const double radius = lambda * static_cast<double>(cfg.depth);
      row.total = static_cast<std::int64_t>(errors.size());
      for (double e : errors) {
        if (e <= radius) ++row.within;
      }
      row.coverage =
          static_cast<double>(row.within) / static_cast<double>(row.total);
      report.rows.push_back(row);
    }
  }

  // Monotonicity in c at fixed lambda.
  for (std::size_t li = 0; li < cfg.lambdas.size(); ++li) {
    for (std::size_t ci = 0; ci + 1 < cfg.widths.size(); ++ci) {
      const TheoremRow& lo = report.rows[ci * cfg.lambdas.size() + li];
      const TheoremRow& hi = report.rows[(ci + 1) * cfg.lambdas.size() + li];
      if (coverage_drop_significant(lo.coverage, lo.total, hi.coverage,
                                    hi.total)) {
        report.monotonicity_violations.push_back(
            "lambda=" + csv_double(lo.lambda) + ": coverage(" +
            csv_int(lo.c) + ")=" + csv_double(lo.coverage) + " -> coverage(" +
            csv_int(hi.c) + ")=" + csv_double(hi.coverage));
      }
    }
  }
  return report;
}

// Schema mcms.theorem.v1: one row per (c, lambda).
inline std::string theorem_csv(const TheoremReport& r) {
  std::string out =
      "schema,game,depth,c,lambda,bound,vacuous,coverage,within,total,seed\n";
  for (const TheoremRow& row : r.rows) {
    out += "mcms.theorem.v1,pig," + csv_int(row.depth) + "," +
           csv_int(row.c) + "," + csv_double(row.lambda) + "," +
           csv_double(row.bound) + "," + csv_int(row.vacuous ? 1 : 0) + "," +
           csv_double(row.coverage) + "," + csv_int(row.within) + "," +
           csv_int(row.total) + "," + csv_u64(r.config.seed) + "\n";
  }
  return out;
}

}  // namespace mcms

#endif  // MCMS_HARNESS_THEOREM_HPP_
