// Copyright 2026 The Recovery Planner Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RECOVERY_ORACLE_H_
#define RECOVERY_ORACLE_H_

#include <cstdint>

#include "recovery/community.h"
#include "recovery/mdp.h"

namespace recovery {

inline constexpr int kOracleMaxDamaged = 8;
inline constexpr uint64_t kOracleMaxSchedules = 1'000'000;

struct OracleResult {
  // Best discounted return over all preemptive schedules. For the
  // time-to-threshold objective this is minus the (discounted) time.
  double value = 0.0;
  RepairAction first_action;
  uint64_t schedules = 0;  // complete schedules enumerated
};

// Exhaustive search over every action sequence from `initial`, which must be
// a kRemainingWork state (the deterministic simulator). Throws
// kNonDeterministicModel, kTerminalState, or kInstanceTooLarge beyond
// kOracleMaxDamaged damaged components or kOracleMaxSchedules schedules.
OracleResult ExhaustiveOracle(const RecoveryState& initial,
                              const Community& community,
                              const MdpConfig& config);

}  // namespace recovery

#endif  // RECOVERY_ORACLE_H_
