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

#ifndef RECOVERY_HAZARD_H_
#define RECOVERY_HAZARD_H_

#include <array>
#include <variant>
#include <vector>

#include "recovery/community.h"
#include "recovery/random.h"

namespace recovery {

// Lognormal fragility: P(damage >= state | im) = Phi(ln(im / median) / beta).
struct FragilityCurve {
  double median_im = 1.0;  // PGA in g, or PGV in cm/s for pipelines
  double beta = 0.5;
};

// Curves for Minor, Moderate, Extensive, Complete.
using FragilityCurves = std::array<FragilityCurve, 4>;

struct ComponentFragility {
  double im = 0.0;
  FragilityCurves curves;
};

// Probability mass over the five damage states, kNone first.
using DamagePmf = std::array<double, kNumDamageStates>;

double StandardNormalCdf(double z);

// Throws kNonPositiveIm for im <= 0.
double ExceedanceProb(double im, const FragilityCurve& curve);

// Successive differences of the exceedance probabilities. Throws
// kNonMonotoneFragility when the probabilities are not nonincreasing.
DamagePmf PmfFromExceedances(const std::array<double, 4>& exceedance);

// Throws kNonMonotoneFragility unless the medians strictly increase.
DamagePmf ComputeDamagePmf(const ComponentFragility& fragility);

// How one component's initial damage is specified: fragility curves with an
// intensity measure, a direct pmf, or a fixed state.
using ComponentHazard =
    std::variant<std::monostate, ComponentFragility, DamagePmf, DamageState>;

// One entry per component index. Junctions need no entry.
using HazardModel = std::vector<ComponentHazard>;

// Checks every entry; throws kMissingFragility, kNonPositiveIm,
// kNonMonotoneFragility or kInvalidValue.
void ValidateHazard(const Community& community, const HazardModel& hazard);

DamageState SampleDamageState(const DamagePmf& pmf, Rng& rng);

// Draws every component independently. Deterministic for a given rng state.
std::vector<DamageState> SampleInitialDamage(const Community& community,
                                             const HazardModel& hazard,
                                             Rng& rng);

}  // namespace recovery

#endif  // RECOVERY_HAZARD_H_
