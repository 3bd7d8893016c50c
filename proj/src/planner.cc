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

#include "recovery/planner.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "fmt/core.h"
#include "recovery/error.h"

namespace recovery {

namespace {

// Stream tags under a decision seed.
constexpr uint64_t kTrajectoryStream = 1;
constexpr uint64_t kCandidateStream = 2;
// Stream tags under an episode seed.
constexpr uint64_t kWorldStream = 11;
constexpr uint64_t kDecisionStream = 12;

void ValidateList(const std::vector<ComponentClass>& list, Network network) {
  std::vector<bool> seen(kNumComponentClasses, false);
  for (const ComponentClass cls : list) {
    if (NetworkOf(cls) != network || seen[static_cast<int>(cls)]) {
      throw RecoveryError(
          ErrorCode::kInvalidValue,
          fmt::format("{} priority list: '{}' is misplaced or repeated",
                      NetworkName(network), ComponentClassName(cls)));
    }
    seen[static_cast<int>(cls)] = true;
  }
  for (int c = 0; c < kNumComponentClasses; ++c) {
    const auto cls = static_cast<ComponentClass>(c);
    if (NetworkOf(cls) == network && !seen[c]) {
      throw RecoveryError(
          ErrorCode::kInvalidValue,
          fmt::format("{} priority list is missing '{}'", NetworkName(network),
                      ComponentClassName(cls)));
    }
  }
}

int Rank(const std::vector<ComponentClass>& list, ComponentClass cls) {
  return static_cast<int>(std::find(list.begin(), list.end(), cls) -
                          list.begin());
}

}  // namespace

void PriorityBasePolicy::Validate() const {
  ValidateList(epn_priority, Network::kPower);
  ValidateList(wn_priority, Network::kWater);
}

RepairAction BaseAction(const RecoveryState& state, const Community& community,
                        const MdpConfig& config,
                        const PriorityBasePolicy& policy) {
  struct Ranked {
    int rank;
    int id;
    int index;
    bool operator<(const Ranked& o) const {
      return rank != o.rank ? rank < o.rank : id < o.id;
    }
  };
  std::vector<Ranked> epn, wn;
  for (size_t i = 0; i < state.damage.size(); ++i) {
    if (state.damage[i] == DamageState::kNone) continue;
    const Component& c = community.component(static_cast<int>(i));
    if (c.network == Network::kPower) {
      epn.push_back({Rank(policy.epn_priority, *c.cls), c.id, static_cast<int>(i)});
    } else {
      wn.push_back({Rank(policy.wn_priority, *c.cls), c.id, static_cast<int>(i)});
    }
  }
  if (epn.empty() && wn.empty()) {
    throw RecoveryError(ErrorCode::kTerminalState,
                        "base policy called with nothing damaged");
  }
  std::sort(epn.begin(), epn.end());
  std::sort(wn.begin(), wn.end());
  RepairAction action{std::vector<bool>(state.damage.size(), false)};
  for (int k = 0; k < std::min<int>(config.n_e, epn.size()); ++k) {
    action.assign[epn[k].index] = true;
  }
  for (int k = 0; k < std::min<int>(config.n_w, wn.size()); ++k) {
    action.assign[wn[k].index] = true;
  }
  return action;
}

void RolloutConfig::Validate() const {
  if (horizon && *horizon < 0) {
    throw RecoveryError(ErrorCode::kInvalidValue,
                        "rollout horizon must be nonnegative");
  }
  if (n_mc_min < 1 || n_mc_max < n_mc_min) {
    throw RecoveryError(ErrorCode::kInvalidValue,
                        "need 1 <= n_mc_min <= n_mc_max");
  }
  if (!(se_threshold > 0.0)) {
    throw RecoveryError(ErrorCode::kInvalidValue,
                        "se_threshold must be positive");
  }
  if (action_cap < 1) {
    throw RecoveryError(ErrorCode::kInvalidValue,
                        "action_cap must be positive");
  }
  if (!(improvement_margin >= 0.0)) {
    throw RecoveryError(ErrorCode::kInvalidValue,
                        "improvement_margin must be nonnegative");
  }
  if (threads < 0) {
    throw RecoveryError(ErrorCode::kInvalidValue,
                        "threads must be nonnegative");
  }
}

RolloutPlanner::RolloutPlanner(const Community& community, MdpConfig mdp,
                               PriorityBasePolicy base_policy,
                               RolloutConfig rollout)
    : community_(&community),
      mdp_(mdp),
      base_policy_(std::move(base_policy)),
      rollout_(rollout) {
  mdp_.Validate();
  base_policy_.Validate();
  rollout_.Validate();
}

RepairAction RolloutPlanner::BaseAction(const RecoveryState& state) const {
  return recovery::BaseAction(state, *community_, mdp_, base_policy_);
}

int RolloutPlanner::HorizonFor(const RecoveryState& state) const {
  return rollout_.horizon.value_or(state.DamagedCount());
}

double RolloutPlanner::SimulateReturn(const RecoveryState& state,
                                      const RepairAction& action, int horizon,
                                      Rng& rng) const {
  if (!IsAdmissible(state, action, *community_, mdp_)) {
    throw RecoveryError(ErrorCode::kInadmissibleAction,
                        "cannot simulate an inadmissible action");
  }
  // Exponential durations are drawn once per damaged component, in index
  // order, and the trajectory then runs on remaining work. By memorylessness
  // this has the same law as redrawing at every step, and trajectory i meets
  // the same durations whichever action is tried first.
  MdpConfig sim = mdp_;
  RecoveryState current = state;
  if (!mdp_.deterministic()) {
    sim.repair_model = RepairModel::kRemainingWork;
    current.remaining_work.assign(state.damage.size(), 0.0);
    for (size_t i = 0; i < state.damage.size(); ++i) {
      if (state.damage[i] == DamageState::kNone) continue;
      current.remaining_work[i] = rng.Exponential(
          community_->component(static_cast<int>(i))
              .MeanRepairDays(state.damage[i]));
    }
  }
  TransitionOutcome out = Step(current, action, *community_, sim, rng);
  double total = out.reward;
  double discount = 1.0;
  current = std::move(out.next_state);
  for (int k = 1; k <= horizon; ++k) {
    if (IsTerminal(current, *community_, mdp_)) break;
    discount *= mdp_.gamma;
    out = Step(current, BaseAction(current), *community_, sim, rng);
    total += discount * out.reward;
    current = std::move(out.next_state);
  }
  return total;
}

QEstimate RolloutPlanner::EstimateQ(const RecoveryState& state,
                                    const RepairAction& action,
                                    uint64_t stream_seed) const {
  if (!IsAdmissible(state, action, *community_, mdp_)) {
    throw RecoveryError(ErrorCode::kInadmissibleAction,
                        "cannot estimate Q for an inadmissible action");
  }
  const int horizon = HorizonFor(state);
  // A deterministic simulator needs a single trajectory.
  const int limit = mdp_.deterministic() ? 1 : rollout_.n_mc_max;
  const int batch = mdp_.deterministic() ? 1 : rollout_.n_mc_min;

  QEstimate q;
  double mean = 0.0, m2 = 0.0;
  double worst = std::numeric_limits<double>::infinity();
  int n = 0;
  while (n < limit) {
    const int end = std::min(limit, n + batch);
    for (; n < end; ++n) {
      Rng rng = Rng::Derived(stream_seed, {kTrajectoryStream,
                                           static_cast<uint64_t>(n)});
      const double g = SimulateReturn(state, action, horizon, rng);
      // Welford update.
      const double delta = g - mean;
      mean += delta / (n + 1);
      m2 += delta * (g - mean);
      worst = std::min(worst, g);
    }
    q.std_error = n > 1 ? std::sqrt(m2 / (n - 1) / n) : 0.0;
    if (mdp_.deterministic() || (n > 1 && q.std_error < rollout_.se_threshold)) {
      break;
    }
  }
  q.n_trajectories = n;
  q.mean = mean;
  q.value = rollout_.mode == Aggregation::kMean ? mean : worst;
  return q;
}

// Spread of a Q estimate's value. The minimum of n returns does not
// concentrate like their mean, so the worst case uses the sample deviation.
double RolloutPlanner::Noise(const QEstimate& q) const {
  if (rollout_.mode == Aggregation::kMean) return q.std_error;
  return q.std_error * std::sqrt(static_cast<double>(q.n_trajectories));
}

Decision RolloutPlanner::Decide(const RecoveryState& state,
                                uint64_t decision_seed) const {
  if (IsTerminal(state, *community_, mdp_)) {
    throw RecoveryError(ErrorCode::kTerminalState,
                        "no decision is needed in a terminal state");
  }
  Decision decision;
  decision.admissible_count = CountAdmissible(state, *community_, mdp_);
  const RepairAction base = BaseAction(state);
  Rng candidate_rng = Rng::Derived(decision_seed, {kCandidateStream});
  std::vector<RepairAction> candidates = EnumerateActions(
      state, *community_, mdp_, rollout_.action_cap, candidate_rng, &base);
  if (candidates.size() == 1) {
    decision.action = std::move(candidates.front());
    return decision;
  }

  // Every candidate uses the same trajectory streams (common random numbers)
  // and writes to its own slot, so the result does not depend on threading.
  std::vector<QEstimate> estimates(candidates.size());
  int workers = rollout_.threads == 0
                    ? static_cast<int>(std::thread::hardware_concurrency())
                    : rollout_.threads;
  workers = std::clamp<int>(workers, 1, candidates.size());
  if (workers == 1) {
    for (size_t i = 0; i < candidates.size(); ++i) {
      estimates[i] = EstimateQ(state, candidates[i], decision_seed);
    }
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (size_t i = next++; i < candidates.size(); i = next++) {
            estimates[i] = EstimateQ(state, candidates[i], decision_seed);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  size_t best = 0;
  for (size_t i = 1; i < candidates.size(); ++i) {
    if (estimates[i].value > estimates[best].value) best = i;
  }
  if (rollout_.improvement_margin > 0.0) {
    const size_t b = std::lower_bound(candidates.begin(), candidates.end(),
                                      base) -
                     candidates.begin();
    if (estimates[best].value - estimates[b].value <=
        rollout_.improvement_margin *
            std::hypot(Noise(estimates[best]), Noise(estimates[b]))) {
      best = b;
    }
  }
  decision.action = candidates[best];
  decision.table.reserve(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i) {
    decision.table.push_back({std::move(candidates[i]), estimates[i]});
  }
  return decision;
}

CurvePoint MakeCurvePoint(const RecoveryState& state,
                          const Community& community) {
  const auto functional = FunctionalSet(community, state.damage);
  CurvePoint p;
  p.time = state.elapsed_time;
  p.benefitted =
      BenefitCount(community, GetServiceStatus(community, functional));
  int epn = 0, wn = 0;
  for (size_t i = 0; i < community.size(); ++i) {
    const Component& c = community.component(static_cast<int>(i));
    if (c.is_junction() || !functional[i]) continue;
    (c.network == Network::kPower ? epn : wn)++;
  }
  const int epn_total = community.physical_count(Network::kPower);
  const int wn_total = community.physical_count(Network::kWater);
  p.epn_fraction = epn_total > 0 ? static_cast<double>(epn) / epn_total : 1.0;
  p.wn_fraction = wn_total > 0 ? static_cast<double>(wn) / wn_total : 1.0;
  return p;
}

EpisodeResult RunEpisode(PolicyKind policy,
                         const std::vector<DamageState>& initial_damage,
                         const RolloutPlanner& planner, uint64_t episode_seed) {
  const Community& community = planner.community();
  const MdpConfig& mdp = planner.mdp();

  // The world always tracks remaining work. Under the exponential model the
  // work is drawn once per component and hidden from the planner.
  MdpConfig world_config = mdp;
  world_config.repair_model = RepairModel::kRemainingWork;
  if (mdp.repair_model == RepairModel::kExponential) {
    world_config.work_distribution = WorkDistribution::kExponential;
  }
  Rng world_rng = Rng::Derived(episode_seed, {kWorldStream});
  RecoveryState world =
      MakeInitialState(community, initial_damage, world_config, world_rng);

  auto observed = [&](const RecoveryState& s) {
    if (mdp.repair_model == RepairModel::kRemainingWork) return s;
    RecoveryState o;
    o.damage = s.damage;
    o.elapsed_time = s.elapsed_time;
    return o;
  };

  EpisodeResult result;
  result.retailer_recovery_time.assign(
      community.retailers().size(), std::numeric_limits<double>::quiet_NaN());
  auto note_retailers = [&](const RecoveryState& s) {
    const auto status =
        GetServiceStatus(community, FunctionalSet(community, s.damage));
    for (size_t j = 0; j < status.retailers.size(); ++j) {
      if (status.retailers[j].served() &&
          std::isnan(result.retailer_recovery_time[j])) {
        result.retailer_recovery_time[j] = s.elapsed_time;
      }
    }
  };

  result.curve.push_back(MakeCurvePoint(world, community));
  note_retailers(world);
  double discount = 1.0;
  int decision_index = 0;
  while (!IsTerminal(world, community, mdp)) {
    const RecoveryState state = observed(world);
    StepRecord record;
    record.decision = decision_index;
    record.start_time = world.elapsed_time;
    RepairAction action;
    if (policy == PolicyKind::kBase) {
      action = planner.BaseAction(state);
      record.admissible_count = CountAdmissible(state, community, mdp);
    } else {
      Decision d = planner.Decide(
          state, DeriveSeed(episode_seed, {kDecisionStream,
                                           static_cast<uint64_t>(decision_index)}));
      action = std::move(d.action);
      record.admissible_count = d.admissible_count;
      for (const auto& c : d.table) record.estimates.push_back(c.q);
    }
    // The world transition is deterministic given the hidden work.
    TransitionOutcome out = Step(world, action, community, world_config, world_rng);
    record.assigned = action.AssignedIndices();
    record.repaired = out.repaired;
    record.completion_time = out.completion_time;
    record.reward = out.reward;
    result.discounted_return += discount * out.reward;
    discount *= mdp.gamma;
    world = std::move(out.next_state);
    record.coverage = community.total_population() > 0.0
                          ? CoverageFraction(world, community)
                          : 0.0;
    result.curve.push_back(MakeCurvePoint(world, community));
    note_retailers(world);
    result.log.push_back(std::move(record));
    ++decision_index;
  }
  result.total_time = world.elapsed_time;
  result.final_state = std::move(world);
  return result;
}

}  // namespace recovery
