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

#ifndef MCMS_TESTS_UNIT_ORACLE_FIXTURE_HPP_
#define MCMS_TESTS_UNIT_ORACLE_FIXTURE_HPP_

#include "mcms/oracle/pig_values.hpp"

namespace mcms {

// One solved Pig table per test binary: solving takes a few seconds, and
// every consumer wants the same fixed point anyway.
inline const PigOracle& shared_pig_oracle() {
  static const PigOracle o =
      PigOracle::solve(PigOracle::Method::kJacobi, /*tol=*/1e-10);
  return o;
}

}  // namespace mcms

#endif  // MCMS_TESTS_UNIT_ORACLE_FIXTURE_HPP_
