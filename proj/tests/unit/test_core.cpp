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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "mcms/core/outcome.hpp"
#include "mcms/core/rng.hpp"

namespace mcms {
namespace {

constexpr ValueBounds kB{-10.0, +10.0};

TEST_CASE("pess and opti on a partially resolved chance node", "[core]") {
  // Three equiprobable outcomes; the first is fully resolved to 2, the other
  // two are still only known to lie in [-10, 10].
  OutcomeSet o;
  o.add(0, 1.0 / 3.0, ValueBounds{2.0, 2.0});
  o.add(1, 1.0 / 3.0, kB);
  o.add(2, 1.0 / 3.0, kB);
  REQUIRE(pess(o) == Catch::Approx(-6.0).margin(1e-15));
  REQUIRE(opti(o) == Catch::Approx(22.0 / 3.0).margin(1e-15));
  REQUIRE(probabilities_sum_to_one(o));

  // Searching the second outcome against the window [4, 5]: the child's
  // lower edge works out to exactly 0 and its upper edge clamps to v_max.
  const SearchWindow w = child_window(1, o, SearchWindow{4.0, 5.0}, kB);
  REQUIRE(w.alpha == Catch::Approx(0.0).margin(1e-12));
  REQUIRE(w.beta == 10.0);
}

TEST_CASE("child windows are sound on random chance nodes", "[core]") {
  // If every unresolved outcome's true value stays inside its bound interval
  // and the searched child's true value lies inside the derived window, then
  // the node's expectation lies inside the parent window. Verified by brute
  // force over randomized nodes.
  Rng rng(20260815);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(4));
    OutcomeSet o;
    double wsum = 0.0;
    std::vector<double> weights(n);
    for (int i = 0; i < n; ++i) {
      weights[i] = 1.0 + static_cast<double>(rng.next_below(9));
      wsum += weights[i];
    }
    for (int i = 0; i < n; ++i) {
      double lo = -10.0 + 20.0 * rng.next_double();
      double hi = -10.0 + 20.0 * rng.next_double();
      if (lo > hi) std::swap(lo, hi);
      o.add(static_cast<std::uint64_t>(i), weights[i] / wsum,
            ValueBounds{lo, hi});
    }
    const double alpha = -12.0 + 20.0 * rng.next_double();
    const double beta = alpha + 8.0 * rng.next_double();
    const std::size_t pick = rng.next_below(n);
    const SearchWindow cw =
        child_window(pick, o, SearchWindow{alpha, beta}, kB);

    // The derived window never leaves the value range.
    REQUIRE(cw.alpha >= kB.v_min);
    REQUIRE(cw.beta <= kB.v_max);

    // Algebraic form, before clamping.
    const auto& e = o[pick];
    const double raw_alpha = (alpha - (opti(o) - e.p * e.upper)) / e.p;
    const double raw_beta = (beta - (pess(o) - e.p * e.lower)) / e.p;
    REQUIRE(cw.alpha ==
            Catch::Approx(std::max(kB.v_min, raw_alpha)).margin(1e-9));
    REQUIRE(cw.beta ==
            Catch::Approx(std::min(kB.v_max, raw_beta)).margin(1e-9));

    // Soundness: a child value at or beyond the *unclamped* window edge
    // forces the whole expectation out of [alpha, beta], no matter where
    // the other outcomes land inside their intervals.
    double rest_max = 0.0, rest_min = 0.0;
    for (int i = 0; i < n; ++i) {
      if (static_cast<std::size_t>(i) == pick) continue;
      rest_max += o[i].p * o[i].upper;
      rest_min += o[i].p * o[i].lower;
    }
    REQUIRE(e.p * raw_alpha + rest_max <= alpha + 1e-9);
    REQUIRE(e.p * raw_beta + rest_min >= beta - 1e-9);
  }
}

TEST_CASE("value clamp and bounds helpers", "[core]") {
  REQUIRE(clamp_value(123.0, kB) == 10.0);
  REQUIRE(clamp_value(-123.0, kB) == -10.0);
  REQUIRE(clamp_value(3.25, kB) == 3.25);
  REQUIRE(is_max_player(Player::kOne));
  REQUIRE_FALSE(is_max_player(Player::kTwo));
  REQUIRE(opponent_of(Player::kOne) == Player::kTwo);
  REQUIRE(opponent_of(Player::kTwo) == Player::kOne);
}

TEST_CASE("contract violations throw", "[core]") {
  REQUIRE_THROWS_AS([] { MCMS_CHECK(false, "boom"); }(), ContractViolation);
}

}  // namespace
}  // namespace mcms
