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

#ifndef RECOVERY_REPORT_H_
#define RECOVERY_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "recovery/evaluation.h"
#include "recovery/oracle.h"
#include "recovery/scenario.h"

namespace recovery {

std::string_view PolicyName(PolicyKind policy);

// Restoration curve as CSV with the header
// time_days,benefitted_persons,epn_frac,wn_frac.
std::string CurveCsv(const RestorationCurve& curve);

// One row per transition of every episode.
std::string TraceCsv(const Community& community,
                     const std::vector<EpisodeResult>& episodes);

// Step plot of benefitted persons over time, one polyline per series.
std::string CurveSvg(
    const std::vector<std::pair<std::string, RestorationCurve>>& series,
    double population);

// Sampled damage as CSV: component_id,class,network,damage.
std::string DamageCsv(const Community& community,
                      const std::vector<DamageState>& damage);

struct PlanReport {
  PolicyEvaluation evaluation;
  std::string summary;
};

// Runs `episodes` episodes of one policy and writes
// <out>/<policy>/curve_epNNN.csv, trace.csv and summary.txt. Throws
// kInvalidValue for episodes < 1 and kIoError when output cannot be written.
PlanReport CmdPlan(const Scenario& scenario, PolicyKind policy, int episodes,
                   uint64_t seed, const std::filesystem::path& out_dir,
                   bool svg = false);

struct CompareReport {
  PolicyEvaluation base;
  PolicyEvaluation rollout;
  double improvement_pct = 0.0;  // positive when rollout is better
  int rollout_not_worse = 0;     // paired episodes with rollout >= base
  std::string summary;
};

// Paired-seed base vs rollout run. Writes both policies' plan outputs plus
// retailers.csv (per-retailer recovery days), pairs.csv (per-episode metrics)
// and compare_summary.txt.
CompareReport CmdCompare(const Scenario& scenario, int episodes, uint64_t seed,
                         const std::filesystem::path& out_dir,
                         bool svg = false);

struct OracleCheckReport {
  double oracle_value = 0.0;
  double rollout_value = 0.0;
  double gap = 0.0;  // relative shortfall of rollout, >= 0
  bool pass = false;
  std::string summary;
};

// Compares a full rollout episode with the exhaustive optimum on the
// deterministic variant of the scenario (fixed remaining work, damage from
// episode 0 of `seed`). Throws kInstanceTooLarge beyond the oracle guard.
OracleCheckReport CmdOracleCheck(const Scenario& scenario, uint64_t seed,
                                 double tolerance = 0.05);

}  // namespace recovery

#endif  // RECOVERY_REPORT_H_
