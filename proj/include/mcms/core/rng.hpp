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

#ifndef MCMS_CORE_RNG_HPP_
#define MCMS_CORE_RNG_HPP_

#include <cstdint>

namespace mcms {

// splitmix64 step (Steele, Lea, Flood '14). Used both as the stream generator
// and as the avalanche mixer for seed derivation. Hand-rolled on purpose:
// seeded streams must be bit-stable across platforms and standard libraries,
// which <random> distributions do not guarantee.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stateless avalanche of a single word.
inline std::uint64_t mix64(std::uint64_t x) {
  std::uint64_t s = x;
  return splitmix64(s);
}

// Keyed combination: absorb words one at a time through the mixer. Order
// matters, so (a,b) and (b,a) land in unrelated streams.
inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(a) ^ (b + 0x9e3779b97f4a7c15ULL));
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b,
                           std::uint64_t c) {
  return mix64(mix64(a, b) ^ (c + 0x6a09e667f3bcc909ULL));
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                           std::uint64_t d) {
  return mix64(mix64(a, b, c) ^ (d + 0xbb67ae8584caa73bULL));
}

// Pure function of its arguments: the sampling seed for the chance node
// reached by taking action `action_index` (static move-order index) in the
// state with hash `state_key` at `remaining_depth` plies from the horizon.
// Re-deriving the seed for the same node always yields the same value, which
// is what keeps two-phase searches and re-expansions sampling-consistent.
inline std::uint64_t subseed(std::uint64_t state_key,
                             std::uint64_t action_index,
                             std::uint64_t remaining_depth,
                             std::uint64_t root_seed) {
  return mix64(state_key, action_index, remaining_depth, root_seed);
}

// Minimal deterministic PRNG over the splitmix64 sequence.
class Rng {
 public:
  Rng() : state_(0x853c49e6748fea9bULL) {}
  explicit Rng(std::uint64_t seed) : state_(mix64(seed)) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  // Uniform in [0, 1) with 53 bits of mantissa.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), unbiased (Lemire rejection).
  std::uint64_t next_below(std::uint64_t n) {
    if (n <= 1) return 0;
    while (true) {
      std::uint64_t x = next_u64();
      __uint128_t m = static_cast<__uint128_t>(x) * n;
      std::uint64_t lo = static_cast<std::uint64_t>(m);
      if (lo >= n || lo >= (0ULL - n) % n) {
        return static_cast<std::uint64_t>(m >> 64);
      }
    }
  }

  // Roll of a fair die 1..sides.
  int roll_die(int sides) {
    return 1 + static_cast<int>(next_below(static_cast<std::uint64_t>(sides)));
  }

 private:
  std::uint64_t state_;
};

}  // namespace mcms

#endif  // MCMS_CORE_RNG_HPP_
