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

#include "recovery/mdp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "fmt/core.h"
#include "recovery/error.h"

namespace recovery {

namespace {

constexpr uint64_t kSaturated = std::numeric_limits<uint64_t>::max();

// Work at or below this many days counts as finished; absorbs the rounding
// left by repeated subtraction.
constexpr double kWorkTolerance = 1e-9;

uint64_t Binomial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kSaturated) return kSaturated;
  }
  return static_cast<uint64_t>(r);
}

uint64_t SaturatingMul(uint64_t a, uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

struct DamagedSplit {
  std::vector<int> epn;
  std::vector<int> wn;
};

DamagedSplit SplitDamaged(const RecoveryState& state,
                          const Community& community) {
  DamagedSplit split;
  for (size_t i = 0; i < state.damage.size(); ++i) {
    if (state.damage[i] == DamageState::kNone) continue;
    const int idx = static_cast<int>(i);
    if (community.component(idx).network == Network::kPower) {
      split.epn.push_back(idx);
    } else {
      split.wn.push_back(idx);
    }
  }
  return split;
}

// All k-subsets of `items`, lexicographic in position.
std::vector<std::vector<int>> Combinations(const std::vector<int>& items,
                                           int k) {
  std::vector<std::vector<int>> out;
  const int n = static_cast<int>(items.size());
  std::vector<int> pos(k);
  std::iota(pos.begin(), pos.end(), 0);
  while (true) {
    std::vector<int> combo(k);
    for (int i = 0; i < k; ++i) combo[i] = items[pos[i]];
    out.push_back(std::move(combo));
    int i = k - 1;
    while (i >= 0 && pos[i] == n - k + i) --i;
    if (i < 0) break;
    ++pos[i];
    for (int j = i + 1; j < k; ++j) pos[j] = pos[j - 1] + 1;
  }
  return out;
}

// Uniform k-subset (Floyd's algorithm).
std::vector<int> RandomSubset(const std::vector<int>& items, int k, Rng& rng) {
  const int n = static_cast<int>(items.size());
  std::set<int> chosen;
  for (int j = n - k; j < n; ++j) {
    const int t = static_cast<int>(rng.UniformIndex(j + 1));
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<int> out;
  for (const int p : chosen) out.push_back(items[p]);
  return out;
}

RepairAction MakeAction(size_t n, const std::vector<int>& a,
                        const std::vector<int>& b) {
  RepairAction action{std::vector<bool>(n, false)};
  for (const int i : a) action.assign[i] = true;
  for (const int i : b) action.assign[i] = true;
  return action;
}

void RequireRemainingWork(const RecoveryState& state) {
  if (state.remaining_work.size() != state.damage.size()) {
    throw RecoveryError(ErrorCode::kInvalidValue,
                        "remaining-work model needs remaining_work for every "
                        "component");
  }
}

}  // namespace

void MdpConfig::Validate() const {
  if (n_e < 1 || n_w < 1) {
    throw RecoveryError(ErrorCode::kInvalidValue,
                        "each network needs at least one resource unit");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw RecoveryError(ErrorCode::kInvalidValue, "gamma must be in (0, 1]");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw RecoveryError(ErrorCode::kInvalidValue, "alpha must be in (0, 1]");
  }
}

int RecoveryState::DamagedCount() const {
  return static_cast<int>(std::count_if(
      damage.begin(), damage.end(),
      [](DamageState d) { return d != DamageState::kNone; }));
}

int DamagedCount(const RecoveryState& state, const Community& community,
                 Network network) {
  int count = 0;
  for (size_t i = 0; i < state.damage.size(); ++i) {
    if (state.damage[i] != DamageState::kNone &&
        community.component(static_cast<int>(i)).network == network) {
      ++count;
    }
  }
  return count;
}

RecoveryState MakeInitialState(const Community& community,
                               std::vector<DamageState> damage,
                               const MdpConfig& config, Rng& rng) {
  if (damage.size() != community.size()) {
    throw RecoveryError(ErrorCode::kInvalidValue,
                        fmt::format("damage vector has {} entries for {} "
                                    "components",
                                    damage.size(), community.size()));
  }
  RecoveryState state;
  state.damage = std::move(damage);
  for (size_t i = 0; i < community.size(); ++i) {
    if (community.component(static_cast<int>(i)).is_junction() &&
        state.damage[i] != DamageState::kNone) {
      throw RecoveryError(ErrorCode::kInvalidValue,
                          "junctions cannot be damaged");
    }
  }
  if (config.repair_model == RepairModel::kRemainingWork) {
    state.remaining_work.assign(community.size(), 0.0);
    for (size_t i = 0; i < community.size(); ++i) {
      if (state.damage[i] == DamageState::kNone) continue;
      const double mean =
          community.component(static_cast<int>(i)).MeanRepairDays(state.damage[i]);
      state.remaining_work[i] =
          config.work_distribution == WorkDistribution::kFixed
              ? mean
              : rng.Exponential(mean);
    }
  }
  return state;
}

std::vector<int> RepairAction::AssignedIndices() const {
  std::vector<int> out;
  for (size_t i = 0; i < assign.size(); ++i) {
    if (assign[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

bool IsAdmissible(const RecoveryState& state, const RepairAction& action,
                  const Community& community, const MdpConfig& config) {
  if (action.assign.size() != state.damage.size()) return false;
  int epn_damaged = 0, wn_damaged = 0, epn_assigned = 0, wn_assigned = 0;
  for (size_t i = 0; i < state.damage.size(); ++i) {
    const bool damaged = state.damage[i] != DamageState::kNone;
    if (action.assign[i] && !damaged) return false;
    if (!damaged) continue;
    const bool power =
        community.component(static_cast<int>(i)).network == Network::kPower;
    (power ? epn_damaged : wn_damaged)++;
    if (action.assign[i]) (power ? epn_assigned : wn_assigned)++;
  }
  return epn_damaged + wn_damaged > 0 &&
         epn_assigned == std::min(config.n_e, epn_damaged) &&
         wn_assigned == std::min(config.n_w, wn_damaged);
}

uint64_t CountAdmissible(const RecoveryState& state, const Community& community,
                         const MdpConfig& config) {
  const uint64_t le = DamagedCount(state, community, Network::kPower);
  const uint64_t lw = DamagedCount(state, community, Network::kWater);
  const uint64_t ne = std::min<uint64_t>(config.n_e, le);
  const uint64_t nw = std::min<uint64_t>(config.n_w, lw);
  return SaturatingMul(Binomial(le, ne), Binomial(lw, nw));
}

std::vector<RepairAction> EnumerateActions(const RecoveryState& state,
                                           const Community& community,
                                           const MdpConfig& config,
                                           uint64_t cap, Rng& rng,
                                           const RepairAction* must_include) {
  if (cap == 0) {
    throw RecoveryError(ErrorCode::kInvalidValue, "action cap must be positive");
  }
  const DamagedSplit split = SplitDamaged(state, community);
  if (split.epn.empty() && split.wn.empty()) {
    throw RecoveryError(ErrorCode::kTerminalState,
                        "no damaged components to assign");
  }
  const int ke = std::min<int>(config.n_e, split.epn.size());
  const int kw = std::min<int>(config.n_w, split.wn.size());
  const uint64_t count = CountAdmissible(state, community, config);
  const size_t n = state.damage.size();

  std::vector<RepairAction> actions;
  if (count <= 4 * cap && count <= (uint64_t{1} << 22)) {
    const auto epn_sets = Combinations(split.epn, ke);
    const auto wn_sets = Combinations(split.wn, kw);
    actions.reserve(count);
    for (const auto& a : epn_sets) {
      for (const auto& b : wn_sets) actions.push_back(MakeAction(n, a, b));
    }
    std::sort(actions.begin(), actions.end());
    if (count <= cap) return actions;

    // Partial Fisher-Yates over the full list, with the required action
    // swapped to the front first.
    size_t start = 0;
    if (must_include != nullptr) {
      const auto it =
          std::lower_bound(actions.begin(), actions.end(), *must_include);
      if (it != actions.end() && *it == *must_include) {
        std::swap(actions[0], *it);
        start = 1;
      }
    }
    for (size_t i = start; i < cap; ++i) {
      const size_t j = i + rng.UniformIndex(actions.size() - i);
      std::swap(actions[i], actions[j]);
    }
    actions.resize(cap);
  } else {
    std::set<RepairAction> chosen;
    if (must_include != nullptr &&
        IsAdmissible(state, *must_include, community, config)) {
      chosen.insert(*must_include);
    }
    while (chosen.size() < cap) {
      chosen.insert(MakeAction(n, RandomSubset(split.epn, ke, rng),
                               RandomSubset(split.wn, kw, rng)));
    }
    actions.assign(chosen.begin(), chosen.end());
  }
  std::sort(actions.begin(), actions.end());
  return actions;
}

TransitionOutcome Step(const RecoveryState& state, const RepairAction& action,
                       const Community& community, const MdpConfig& config,
                       Rng& rng) {
  if (!IsAdmissible(state, action, community, config)) {
    throw RecoveryError(ErrorCode::kInadmissibleAction,
                        "action is not admissible in this state");
  }
  TransitionOutcome out;
  out.next_state = state;
  const std::vector<int> assigned = action.AssignedIndices();

  if (config.repair_model == RepairModel::kExponential) {
    double best = std::numeric_limits<double>::infinity();
    int winner = -1;
    for (const int i : assigned) {
      const double t = rng.Exponential(
          community.component(i).MeanRepairDays(state.damage[i]));
      if (t < best) {
        best = t;
        winner = i;
      }
    }
    out.completion_time = best;
    out.next_state.damage[winner] = DamageState::kNone;
    out.repaired.push_back(winner);
  } else {
    RequireRemainingWork(state);
    double best = std::numeric_limits<double>::infinity();
    for (const int i : assigned) best = std::min(best, state.remaining_work[i]);
    out.completion_time = best;
    for (const int i : assigned) {
      double& work = out.next_state.remaining_work[i];
      work -= best;
      if (work <= kWorkTolerance) {
        work = 0.0;
        out.next_state.damage[i] = DamageState::kNone;
        out.repaired.push_back(i);
      }
    }
  }
  out.next_state.elapsed_time += out.completion_time;
  out.reward = Reward(state, out.completion_time, out.next_state, community,
                      config);
  return out;
}

double Reward(const RecoveryState& /*prev*/, double completion_time,
              const RecoveryState& next_state, const Community& community,
              const MdpConfig& config) {
  if (config.objective == ObjectiveKind::kTimeToThreshold) {
    return -completion_time;
  }
  if (!(next_state.elapsed_time > 0.0)) {
    throw RecoveryError(ErrorCode::kZeroElapsedTime,
                        "benefit-rate reward needs positive elapsed time");
  }
  return BenefitAt(next_state, community) / next_state.elapsed_time;
}

double BenefitAt(const RecoveryState& state, const Community& community) {
  const auto functional = FunctionalSet(community, state.damage);
  return BenefitCount(community, GetServiceStatus(community, functional));
}

double CoverageFraction(const RecoveryState& state,
                        const Community& community) {
  if (!(community.total_population() > 0.0)) {
    throw RecoveryError(ErrorCode::kZeroPopulation,
                        "community has no population");
  }
  return BenefitAt(state, community) / community.total_population();
}

bool IsTerminal(const RecoveryState& state, const Community& community,
                const MdpConfig& config) {
  if (state.DamagedCount() == 0) return true;
  if (config.objective == ObjectiveKind::kTimeToThreshold) {
    return CoverageFraction(state, community) >= config.alpha;
  }
  return false;
}

}  // namespace recovery
