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

#ifndef RECOVERY_PLANNER_H_
#define RECOVERY_PLANNER_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "recovery/community.h"
#include "recovery/mdp.h"
#include "recovery/random.h"

namespace recovery {

// Expert priority lists over component classes; within a class, lower ids
// are repaired first.
struct PriorityBasePolicy {
  std::vector<ComponentClass> epn_priority = {
      ComponentClass::kTransmissionSegment, ComponentClass::kSubstation,
      ComponentClass::kDistributionSegment};
  std::vector<ComponentClass> wn_priority = {
      ComponentClass::kWell, ComponentClass::kWaterTank,
      ComponentClass::kPumpingPlant, ComponentClass::kPipeline};

  // Each list must name every class of its network exactly once.
  void Validate() const;
};

// Throws kTerminalState when nothing is damaged.
RepairAction BaseAction(const RecoveryState& state, const Community& community,
                        const MdpConfig& config,
                        const PriorityBasePolicy& policy);

enum class Aggregation {
  kMean,       // average of the sampled returns
  kWorstCase,  // smallest sampled return (longest time, fewest persons/day)
};

struct RolloutConfig {
  // Base-policy steps simulated after the forced first transition. Defaults
  // to the number of damaged components at the decision.
  std::optional<int> horizon;
  int n_mc_min = 32;  // also the batch size
  int n_mc_max = 2048;
  double se_threshold = 0.05;
  Aggregation mode = Aggregation::kMean;
  uint64_t action_cap = 500;
  // Worker threads for candidate evaluation; 0 picks the hardware count.
  int threads = 1;
  // The base action is kept unless another candidate beats it by more than
  // this many combined standard errors (sample deviations under kWorstCase).
  // 0 is a plain argmax.
  double improvement_margin = 0.0;

  void Validate() const;
};

struct QEstimate {
  double value = 0.0;  // mean, or the worst return under kWorstCase
  double mean = 0.0;
  double std_error = 0.0;
  int n_trajectories = 0;
};

struct CandidateEstimate {
  RepairAction action;
  QEstimate q;
};

struct Decision {
  RepairAction action;
  uint64_t admissible_count = 0;
  // Empty when only one action was admissible.
  std::vector<CandidateEstimate> table;
};

class RolloutPlanner {
 public:
  // Throws kInvalidValue when any configuration is inconsistent.
  RolloutPlanner(const Community& community, MdpConfig mdp,
                 PriorityBasePolicy base_policy, RolloutConfig rollout);

  const Community& community() const { return *community_; }
  const MdpConfig& mdp() const { return mdp_; }
  const PriorityBasePolicy& base_policy() const { return base_policy_; }
  const RolloutConfig& rollout() const { return rollout_; }

  RepairAction BaseAction(const RecoveryState& state) const;

  // Discounted return of one trajectory: `action` first, then the base
  // policy for at most `horizon` steps, stopping at terminal states. Under
  // the exponential model each damaged component's duration is drawn once
  // at the start of the trajectory. Throws kInadmissibleAction.
  double SimulateReturn(const RecoveryState& state, const RepairAction& action,
                        int horizon, Rng& rng) const;

  // Monte-Carlo Q estimate. Trajectory i draws from a stream derived from
  // (stream_seed, i), so estimates for different actions under the same
  // seed share random numbers.
  QEstimate EstimateQ(const RecoveryState& state, const RepairAction& action,
                      uint64_t stream_seed) const;

  // One-step lookahead over the candidate actions. Ties go to the smallest
  // action vector; see RolloutConfig::improvement_margin for the base
  // action's preference. Throws kTerminalState.
  Decision Decide(const RecoveryState& state, uint64_t decision_seed) const;

 private:
  int HorizonFor(const RecoveryState& state) const;
  double Noise(const QEstimate& q) const;

  const Community* community_;
  MdpConfig mdp_;
  PriorityBasePolicy base_policy_;
  RolloutConfig rollout_;
};

enum class PolicyKind { kBase, kRollout };

struct CurvePoint {
  double time = 0.0;        // days
  double benefitted = 0.0;  // persons
  double epn_fraction = 0.0;
  double wn_fraction = 0.0;
};

using RestorationCurve = std::vector<CurvePoint>;

struct StepRecord {
  int decision = 0;
  double start_time = 0.0;
  std::vector<int> assigned;  // component indices
  std::vector<int> repaired;
  double completion_time = 0.0;
  double reward = 0.0;
  double coverage = 0.0;  // after the transition
  uint64_t admissible_count = 0;
  std::vector<QEstimate> estimates;  // rollout only
};

struct EpisodeResult {
  RestorationCurve curve;  // starts with the t = 0 point
  double total_time = 0.0;
  double discounted_return = 0.0;
  std::vector<StepRecord> log;
  RecoveryState final_state;
  // Day each retailer first had power and water; NaN if it never did.
  std::vector<double> retailer_recovery_time;
};

// Runs decisions and transitions until the state is terminal. The true
// repair durations are fixed per component at the start of the episode from
// a stream derived from `episode_seed`, so two policies run with the same
// seed face the same damage and the same durations. Under the exponential
// model this is equivalent in distribution to redrawing at every step; the
// planner never sees the durations.
EpisodeResult RunEpisode(PolicyKind policy,
                         const std::vector<DamageState>& initial_damage,
                         const RolloutPlanner& planner, uint64_t episode_seed);

CurvePoint MakeCurvePoint(const RecoveryState& state,
                          const Community& community);

}  // namespace recovery

#endif  // RECOVERY_PLANNER_H_
