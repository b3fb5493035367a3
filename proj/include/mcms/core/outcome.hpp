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

#ifndef MCMS_CORE_OUTCOME_HPP_
#define MCMS_CORE_OUTCOME_HPP_

#include <cstdint>
#include <vector>

#include "mcms/core/types.hpp"

namespace mcms {

// One chance outcome of an (state, action) pair: an opaque game-defined id,
// its probability, and the current lower/upper bounds on the value of the
// position it leads to. Bounds start at the game's value bounds and tighten
// as the search resolves (or probes) the child.
struct OutcomeEntry {
  std::uint64_t id = 0;
  double p = 0.0;
  Value lower = 0.0;
  Value upper = 0.0;
};

// Ordered chance outcome distribution. Order is part of the contract: engines
// iterate entries front to back and accumulate values in that order, which is
// what makes independently-pruned searches return bit-identical doubles.
struct OutcomeSet {
  std::vector<OutcomeEntry> entries;

  void clear() { entries.clear(); }
  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
  OutcomeEntry& operator[](std::size_t i) { return entries[i]; }
  const OutcomeEntry& operator[](std::size_t i) const { return entries[i]; }

  void add(std::uint64_t id, double p, const ValueBounds& b) {
    entries.push_back(OutcomeEntry{id, p, b.v_min, b.v_max});
  }
};

// Lower bound on the expected value over the outcome set: assume every
// unresolved child collapses to its current lower bound.
inline Value pess(const OutcomeSet& o) {
  MCMS_CHECK(!o.empty(), "pess() on empty outcome set");
  Value s = 0.0;
  for (const OutcomeEntry& e : o.entries) s += e.p * e.lower;
  return s;
}

// Upper bound counterpart of pess().
inline Value opti(const OutcomeSet& o) {
  MCMS_CHECK(!o.empty(), "opti() on empty outcome set");
  Value s = 0.0;
  for (const OutcomeEntry& e : o.entries) s += e.p * e.upper;
  return s;
}

// Window to search the child behind entry `i`, given the enclosing window `w`
// on the chance node's expected value. Derivation: the expectation can still
// land above alpha only if this child's value exceeds
// (alpha - opti(O) + p_i * upper_i) / p_i, and symmetrically for beta with
// pess(). Results are clamped into the game's value bounds.
inline SearchWindow child_window(std::size_t i, const OutcomeSet& o,
                                 const SearchWindow& w,
                                 const ValueBounds& bounds) {
  MCMS_CHECK(i < o.size(), "child_window(): index out of range");
  const OutcomeEntry& e = o[i];
  MCMS_CHECK(e.p > 0.0, "child_window(): zero-probability outcome");
  const Value opti_sum = opti(o);
  const Value pess_sum = pess(o);
  Value a = (w.alpha - (opti_sum - e.p * e.upper)) / e.p;
  Value b = (w.beta - (pess_sum - e.p * e.lower)) / e.p;
  if (a < bounds.v_min) a = bounds.v_min;
  if (b > bounds.v_max) b = bounds.v_max;
  return SearchWindow{a, b};
}

// Probability mass sanity check used by game contract tests.
inline bool probabilities_sum_to_one(const OutcomeSet& o, double tol = 1e-9) {
  double s = 0.0;
  for (const OutcomeEntry& e : o.entries) {
    if (e.p <= 0.0) return false;
    s += e.p;
  }
  return s > 1.0 - tol && s < 1.0 + tol;
}

}  // namespace mcms

#endif  // MCMS_CORE_OUTCOME_HPP_
