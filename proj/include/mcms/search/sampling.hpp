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

#ifndef MCMS_SEARCH_SAMPLING_HPP_
#define MCMS_SEARCH_SAMPLING_HPP_

#include <cmath>
#include <cstdint>

#include "mcms/search/star.hpp"

namespace mcms {

// Sample-width configuration of the Monte Carlo engines.
struct SamplingParams {
  int c = 10;               // outcomes sampled per chance node
  std::uint64_t seed = 0;   // sampling seed base
};

// Parameters of the finite-sample accuracy guarantee for depth-d sampled
// minimax with width c over games whose utilities lie in [-v_max, +v_max]
// with at most `branching` actions per decision node.
struct TheoremParams {
  int c = 10;
  double lambda = 10.0;  // per-level accuracy, in (0, 2*v_max]
  int depth = 1;
  double v_max = 100.0;
  int branching = 2;
};

// Lower bound on P(|sampled value - true depth-d value| <= lambda * d):
//   1 - (2 c |A|)^d * exp(-lambda^2 c / (2 v_max^2)).
// May be non-positive, in which case the guarantee is vacuous at these
// parameters (more samples or a looser lambda are needed).
inline double theorem_bound(const TheoremParams& p) {
  MCMS_CHECK(p.c >= 1 && p.depth >= 1 && p.branching >= 1,
             "bad theorem parameters");
  MCMS_CHECK(p.lambda > 0.0 && p.lambda <= 2.0 * p.v_max,
             "lambda must be in (0, 2*v_max]");
  const double outcomes =
      2.0 * static_cast<double>(p.c) * static_cast<double>(p.branching);
  const double count = std::pow(outcomes, static_cast<double>(p.depth));
  const double tail = std::exp(-p.lambda * p.lambda * static_cast<double>(p.c) /
                               (2.0 * p.v_max * p.v_max));
  return 1.0 - count * tail;
}

inline double theorem_error_radius(const TheoremParams& p) {
  return p.lambda * static_cast<double>(p.depth);
}

// Monte Carlo counterparts of the classic engines: identical search code over
// sampled outcome sets.
template <Game G>
SampledStarSearch<G> make_expss(const SamplingParams& sp, bool use_tt = true) {
  return make_sampled<G>(PruneKind::kNone, sp.c, sp.seed, use_tt);
}

template <Game G>
SampledStarSearch<G> make_star1ss(const SamplingParams& sp,
                                  bool use_tt = true) {
  return make_sampled<G>(PruneKind::kStar1, sp.c, sp.seed, use_tt);
}

template <Game G>
SampledStarSearch<G> make_star2ss(const SamplingParams& sp,
                                  bool use_tt = true) {
  return make_sampled<G>(PruneKind::kStar2, sp.c, sp.seed, use_tt);
}

}  // namespace mcms

#endif  // MCMS_SEARCH_SAMPLING_HPP_
