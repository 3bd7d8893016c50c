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

#include "recovery/oracle.h"

#include <cmath>
#include <limits>

#include "fmt/core.h"
#include "recovery/error.h"

namespace recovery {

namespace {

class ScheduleSearch {
 public:
  ScheduleSearch(const Community& community, const MdpConfig& config)
      : community_(community), config_(config), rng_(0) {}

  // Best return-to-go from `state`; `first` receives the maximizing action.
  double Search(const RecoveryState& state, RepairAction* first) {
    if (IsTerminal(state, community_, config_)) {
      if (++schedules_ > kOracleMaxSchedules) {
        throw RecoveryError(
            ErrorCode::kInstanceTooLarge,
            fmt::format("more than {} schedules", kOracleMaxSchedules));
      }
      return 0.0;
    }
    const uint64_t count = CountAdmissible(state, community_, config_);
    const auto actions =
        EnumerateActions(state, community_, config_, count, rng_);
    double best = -std::numeric_limits<double>::infinity();
    for (const RepairAction& a : actions) {
      const TransitionOutcome out = Step(state, a, community_, config_, rng_);
      const double v =
          out.reward + config_.gamma * Search(out.next_state, nullptr);
      // Ascending enumeration plus a strict comparison keeps the smallest
      // optimal action.
      if (std::isinf(best) || v > best + 1e-12 * std::abs(best)) {
        best = v;
        if (first != nullptr) *first = a;
      }
    }
    return best;
  }

  uint64_t schedules() const { return schedules_; }

 private:
  const Community& community_;
  const MdpConfig& config_;
  Rng rng_;  // never drawn from by the deterministic simulator
  uint64_t schedules_ = 0;
};

}  // namespace

OracleResult ExhaustiveOracle(const RecoveryState& initial,
                              const Community& community,
                              const MdpConfig& config) {
  if (!config.deterministic() ||
      initial.remaining_work.size() != initial.damage.size()) {
    throw RecoveryError(ErrorCode::kNonDeterministicModel,
                        "the oracle needs the remaining-work repair model");
  }
  const int damaged = initial.DamagedCount();
  if (damaged > kOracleMaxDamaged) {
    throw RecoveryError(
        ErrorCode::kInstanceTooLarge,
        fmt::format("{} damaged components; the oracle handles at most {}",
                    damaged, kOracleMaxDamaged));
  }
  if (IsTerminal(initial, community, config)) {
    throw RecoveryError(ErrorCode::kTerminalState,
                        "initial state is already terminal");
  }
  ScheduleSearch search(community, config);
  OracleResult result;
  result.value = search.Search(initial, &result.first_action);
  result.schedules = search.schedules();
  return result;
}

}  // namespace recovery
