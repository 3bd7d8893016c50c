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

#ifndef RECOVERY_MDP_H_
#define RECOVERY_MDP_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "recovery/community.h"
#include "recovery/random.h"

namespace recovery {

enum class ObjectiveKind {
  // Minimize the time until a fraction alpha of the population benefits.
  // Reward per transition is the negated completion time.
  kTimeToThreshold,
  // Maximize benefitted persons per day: reward r / t_rep.
  kBenefitRate,
};

enum class RepairModel {
  // Memoryless repair times, redrawn at every decision.
  kExponential,
  // Each damaged component carries its remaining work in the state; the
  // simulator is then deterministic given the state.
  kRemainingWork,
};

// How remaining work is drawn when a kRemainingWork state is created.
enum class WorkDistribution {
  kFixed,        // exactly the mean repair time
  kExponential,  // exponential with the mean repair time
};

struct MdpConfig {
  int n_e = 1;  // EPN resource units
  int n_w = 1;  // WN resource units
  double gamma = 0.99;
  ObjectiveKind objective = ObjectiveKind::kTimeToThreshold;
  double alpha = 0.8;
  RepairModel repair_model = RepairModel::kExponential;
  WorkDistribution work_distribution = WorkDistribution::kFixed;

  // Throws kInvalidValue.
  void Validate() const;
  bool deterministic() const {
    return repair_model == RepairModel::kRemainingWork;
  }
};

struct RecoveryState {
  std::vector<DamageState> damage;  // per component index
  double elapsed_time = 0.0;        // days since the hazard
  // Days of work left per component; empty under kExponential.
  std::vector<double> remaining_work;

  int DamagedCount() const;
};

// Number of damaged physical components in one network (L_t^E or L_t^W).
int DamagedCount(const RecoveryState& state, const Community& community,
                 Network network);

// Builds the decision-epoch-zero state. Under kRemainingWork the work of every
// damaged component is drawn from config.work_distribution (the rng is only
// touched for kExponential work).
RecoveryState MakeInitialState(const Community& community,
                               std::vector<DamageState> damage,
                               const MdpConfig& config, Rng& rng);

// Assignment of resource units, one flag per component index.
struct RepairAction {
  std::vector<bool> assign;

  std::vector<int> AssignedIndices() const;
  friend bool operator==(const RepairAction&, const RepairAction&) = default;
  friend bool operator<(const RepairAction& a, const RepairAction& b) {
    return a.assign < b.assign;
  }
};

bool IsAdmissible(const RecoveryState& state, const RepairAction& action,
                  const Community& community, const MdpConfig& config);

// C(L_E, min(N_E, L_E)) * C(L_W, min(N_W, L_W)), saturating at UINT64_MAX.
uint64_t CountAdmissible(const RecoveryState& state, const Community& community,
                         const MdpConfig& config);

// The whole admissible set when it has at most `cap` members, otherwise `cap`
// distinct actions drawn uniformly that always contain `must_include` when
// given. Returned in ascending order. Throws kTerminalState when nothing is
// damaged.
std::vector<RepairAction> EnumerateActions(
    const RecoveryState& state, const Community& community,
    const MdpConfig& config, uint64_t cap, Rng& rng,
    const RepairAction* must_include = nullptr);

struct TransitionOutcome {
  RecoveryState next_state;
  double completion_time = 0.0;  // days until the first repair finished
  std::vector<int> repaired;     // component indices
  double reward = 0.0;
};

// Advances until at least one assigned component is repaired. Throws
// kInadmissibleAction.
TransitionOutcome Step(const RecoveryState& state, const RepairAction& action,
                       const Community& community, const MdpConfig& config,
                       Rng& rng);

// Reward of a transition that took `completion_time` days and ended in
// `next_state`. Throws kZeroElapsedTime for a benefit-rate reward at t = 0.
double Reward(const RecoveryState& prev, double completion_time,
              const RecoveryState& next_state, const Community& community,
              const MdpConfig& config);

double BenefitAt(const RecoveryState& state, const Community& community);

// Benefitted share of the population. Throws kZeroPopulation.
double CoverageFraction(const RecoveryState& state, const Community& community);

bool IsTerminal(const RecoveryState& state, const Community& community,
                const MdpConfig& config);

}  // namespace recovery

#endif  // RECOVERY_MDP_H_
