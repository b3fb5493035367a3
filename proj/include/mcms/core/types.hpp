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

#ifndef MCMS_CORE_TYPES_HPP_
#define MCMS_CORE_TYPES_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mcms {

using Value = double;

// Players are 1 (maximizer) and 2 (minimizer). Utilities are always expressed
// from player 1's point of view; player 2's utility is the negation.
enum class Player : int { kOne = 1, kTwo = 2 };

inline Player opponent_of(Player p) {
  return p == Player::kOne ? Player::kTwo : Player::kOne;
}

inline bool is_max_player(Player p) { return p == Player::kOne; }

// Inclusive utility range of a game. Every heuristic evaluation and every
// terminal utility must lie inside [v_min, v_max].
struct ValueBounds {
  Value v_min;
  Value v_max;
};

// Half-open pruning window (alpha, beta) carried through a search. A window is
// valid when alpha < beta and both ends are inside the game's value bounds.
struct SearchWindow {
  Value alpha;
  Value beta;
};

// Thrown when a caller breaks a documented precondition (e.g. asking for the
// legal actions of a terminal state). These are programming errors, not
// recoverable conditions, but tests exercise them so we throw rather than
// abort.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what)
      : std::logic_error(what) {}
};

#define MCMS_CHECK(cond, msg)                  \
  do {                                         \
    if (!(cond)) {                             \
      throw ::mcms::ContractViolation((msg));  \
    }                                          \
  } while (false)

inline Value clamp_value(Value v, const ValueBounds& b) {
  if (v < b.v_min) return b.v_min;
  if (v > b.v_max) return b.v_max;
  return v;
}

}  // namespace mcms

#endif  // MCMS_CORE_TYPES_HPP_
