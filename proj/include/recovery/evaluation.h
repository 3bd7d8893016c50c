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

#ifndef RECOVERY_EVALUATION_H_
#define RECOVERY_EVALUATION_H_

#include <cstdint>
#include <vector>

#include "recovery/planner.h"
#include "recovery/scenario.h"

namespace recovery {

// Area under the restoration curve divided by its duration (persons/day).
// A curve with no transitions yields its initial value.
double AreaRate(const RestorationCurve& curve);

// Time to reach alpha for the time objective; AreaRate for the benefit
// objective.
double EpisodeMetric(const EpisodeResult& episode, const MdpConfig& config);

// Episode e draws its damage from DeriveSeed(seed, {damage, e}) and its
// repair durations from DeriveSeed(seed, {episode, e}); runs with equal seeds
// are therefore paired across policies.
std::vector<DamageState> EpisodeDamage(const Scenario& scenario, uint64_t seed,
                                       int episode);
uint64_t EpisodeSeed(uint64_t seed, int episode);

struct PolicyEvaluation {
  PolicyKind policy = PolicyKind::kBase;
  double mean = 0.0;
  double std_error = 0.0;
  std::vector<double> metrics;  // one per episode
  std::vector<EpisodeResult> episodes;
};

// Throws kInvalidValue for fewer than one episode. The standard error is 0
// for a single episode.
PolicyEvaluation EvaluatePolicy(PolicyKind policy, const Scenario& scenario,
                                int n_episodes, uint64_t seed);

// True when larger values of the episode metric are better.
bool HigherIsBetter(const MdpConfig& config);

// Whether `candidate` is at least as good as `reference`. Differences below
// 1e-9 relative are rounding from summing the same durations in another
// order and count as ties.
bool NotWorse(double candidate, double reference, bool higher_is_better);

}  // namespace recovery

#endif  // RECOVERY_EVALUATION_H_
