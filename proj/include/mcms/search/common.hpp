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

#ifndef MCMS_SEARCH_COMMON_HPP_
#define MCMS_SEARCH_COMMON_HPP_

#include <chrono>
#include <cstdint>
#include <limits>
#include <vector>

#include "mcms/core/game.hpp"

namespace mcms {

// What a search hands back, uniformly across engines.
template <typename Action>
struct SearchResult {
  Value value = 0.0;
  Action best_action{};
  int best_action_index = -1;  // index into the static move order
  int completed_depth = 0;     // deepest fully completed iteration
  std::uint64_t nodes_visited = 0;
  bool budget_starved = false;  // budget died before depth 1 finished
};

// Search budget: either a node count (bit-reproducible) or wall-clock
// milliseconds, plus a depth cap.
struct DepthBudget {
  enum class Mode { kNodes, kWallClock };
  Mode mode = Mode::kNodes;
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max();
  int max_depth = 64;

  static DepthBudget nodes(std::uint64_t n, int max_d = 64) {
    return DepthBudget{Mode::kNodes, n, max_d};
  }
  static DepthBudget millis(std::uint64_t ms, int max_d = 64) {
    return DepthBudget{Mode::kWallClock, ms, max_d};
  }
  static DepthBudget depth(int d) {
    return DepthBudget{Mode::kNodes, std::numeric_limits<std::uint64_t>::max(),
                       d};
  }
};

// Thrown internally when the budget runs dry mid-iteration; iterative
// deepening catches it and reports the previous completed depth.
struct BudgetExhausted {};

// Fixed-size, direct-indexed, replace-always transposition table storing only
// the best move for a position. Collisions are benign: probed moves are
// validated against the legal move list before use.
template <typename Action>
class TranspositionTable {
 public:
  explicit TranspositionTable(int bits = 20)
      : mask_((std::uint64_t{1} << bits) - 1), slots_(std::uint64_t{1} << bits) {}

  // O(1): stale slots are recognized by generation stamp.
  void clear() { ++gen_; }

  void store(std::uint64_t key, const Action& move) {
    Slot& s = slots_[mix64(key) & mask_];
    s.key = key;
    s.move = move;
    s.gen = gen_;
  }

  const Action* probe(std::uint64_t key) const {
    const Slot& s = slots_[mix64(key) & mask_];
    if (s.gen == gen_ && s.key == key) return &s.move;
    return nullptr;
  }

 private:
  struct Slot {
    std::uint64_t key = 0;
    Action move{};
    std::uint32_t gen = 0;
  };
  std::uint64_t mask_;
  std::vector<Slot> slots_;
  std::uint32_t gen_ = 1;  // slots default to 0 == never valid
};

// Node accounting and budget enforcement shared by the engines.
class BudgetClock {
 public:
  void reset(const DepthBudget& b) {
    budget_ = b;
    nodes_ = 0;
    if (b.mode == DepthBudget::Mode::kWallClock) {
      deadline_ = std::chrono::steady_clock::now() +
                  std::chrono::milliseconds(b.limit);
    }
  }

  // Counts one node; throws when the budget is exceeded.
  void tick() {
    ++nodes_;
    if (budget_.mode == DepthBudget::Mode::kNodes) {
      if (nodes_ > budget_.limit) throw BudgetExhausted{};
    } else if ((nodes_ & 1023) == 0 &&
               std::chrono::steady_clock::now() >= deadline_) {
      throw BudgetExhausted{};
    }
  }

  std::uint64_t nodes() const { return nodes_; }
  int max_depth() const { return budget_.max_depth; }

 private:
  DepthBudget budget_{};
  std::uint64_t nodes_ = 0;
  std::chrono::steady_clock::time_point deadline_{};
};

}  // namespace mcms

#endif  // MCMS_SEARCH_COMMON_HPP_
