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

#ifndef MCMS_HARNESS_CSV_HPP_
#define MCMS_HARNESS_CSV_HPP_

#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>

#include "mcms/search/common.hpp"

namespace mcms {

// All CSV output is build-independent and deterministic: doubles are printed
// with %.17g (round-trip exact), and rows carry no clocks or hostnames.

inline std::string csv_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf);
}

inline std::string csv_u64(std::uint64_t x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(x));
  return std::string(buf);
}

inline std::string csv_int(long long x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld", x);
  return std::string(buf);
}

// Canonical budget column. A pure fixed-depth budget is represented
// internally as node mode with an unlimited limit; it prints as the depth.
inline std::string budget_to_string(const DepthBudget& b) {
  if (b.mode == DepthBudget::Mode::kWallClock) {
    return "ms=" + csv_u64(b.limit);
  }
  if (b.limit == std::numeric_limits<std::uint64_t>::max()) {
    return "depth=" + csv_int(b.max_depth);
  }
  return "nodes=" + csv_u64(b.limit);
}

// Quotes a field iff it contains a comma, quote, or newline.
inline std::string csv_field(const std::string& s) {
  bool needs = false;
  for (char c : s) {
    if (c == ',' || c == '"' || c == '\n' || c == '\r') needs = true;
  }
  if (!needs) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace mcms

#endif  // MCMS_HARNESS_CSV_HPP_
