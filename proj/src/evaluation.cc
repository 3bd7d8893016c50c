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

#include "recovery/evaluation.h"

#include <algorithm>
#include <cmath>

#include "recovery/error.h"

namespace recovery {

namespace {

constexpr uint64_t kDamageStream = 21;
constexpr uint64_t kEpisodeStream = 22;

}  // namespace

double AreaRate(const RestorationCurve& curve) {
  if (curve.empty()) return 0.0;
  const double span = curve.back().time - curve.front().time;
  if (!(span > 0.0)) return curve.front().benefitted;
  double area = 0.0;
  for (size_t k = 0; k + 1 < curve.size(); ++k) {
    area += curve[k].benefitted * (curve[k + 1].time - curve[k].time);
  }
  return area / span;
}

double EpisodeMetric(const EpisodeResult& episode, const MdpConfig& config) {
  if (config.objective == ObjectiveKind::kTimeToThreshold) {
    return episode.total_time;
  }
  return AreaRate(episode.curve);
}

bool HigherIsBetter(const MdpConfig& config) {
  return config.objective == ObjectiveKind::kBenefitRate;
}

bool NotWorse(double candidate, double reference, bool higher_is_better) {
  const double slack = 1e-9 * std::max(1.0, std::abs(reference));
  return higher_is_better ? candidate >= reference - slack
                          : candidate <= reference + slack;
}

std::vector<DamageState> EpisodeDamage(const Scenario& scenario, uint64_t seed,
                                       int episode) {
  Rng rng = Rng::Derived(seed, {kDamageStream, static_cast<uint64_t>(episode)});
  return SampleInitialDamage(scenario.community, scenario.hazard, rng);
}

uint64_t EpisodeSeed(uint64_t seed, int episode) {
  return DeriveSeed(seed, {kEpisodeStream, static_cast<uint64_t>(episode)});
}

PolicyEvaluation EvaluatePolicy(PolicyKind policy, const Scenario& scenario,
                                int n_episodes, uint64_t seed) {
  if (n_episodes < 1) {
    throw RecoveryError(ErrorCode::kInvalidValue,
                        "need at least one episode");
  }
  const RolloutPlanner planner(scenario.community, scenario.mdp,
                               scenario.base_policy, scenario.rollout);
  PolicyEvaluation eval;
  eval.policy = policy;
  for (int e = 0; e < n_episodes; ++e) {
    EpisodeResult r = RunEpisode(policy, EpisodeDamage(scenario, seed, e),
                                 planner, EpisodeSeed(seed, e));
    eval.metrics.push_back(EpisodeMetric(r, scenario.mdp));
    eval.episodes.push_back(std::move(r));
  }
  double sum = 0.0;
  for (const double m : eval.metrics) sum += m;
  eval.mean = sum / n_episodes;
  if (n_episodes > 1) {
    double ss = 0.0;
    for (const double m : eval.metrics) ss += (m - eval.mean) * (m - eval.mean);
    eval.std_error = std::sqrt(ss / (n_episodes - 1) / n_episodes);
  }
  return eval;
}

}  // namespace recovery
