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

#include "recovery/hazard.h"

#include <cmath>
#include <numbers>

#include "fmt/core.h"
#include "recovery/error.h"

namespace recovery {

double StandardNormalCdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double ExceedanceProb(double im, const FragilityCurve& curve) {
  if (!(im > 0.0)) {
    throw RecoveryError(ErrorCode::kNonPositiveIm,
                        fmt::format("intensity measure {} must be positive", im));
  }
  if (!(curve.median_im > 0.0) || !(curve.beta > 0.0)) {
    throw RecoveryError(ErrorCode::kInvalidValue,
                        "fragility median and beta must be positive");
  }
  return StandardNormalCdf(std::log(im / curve.median_im) / curve.beta);
}

DamagePmf PmfFromExceedances(const std::array<double, 4>& exceedance) {
  DamagePmf pmf{};
  double above = 1.0;
  for (int k = 0; k < 4; ++k) {
    const double p = exceedance[k];
    if (!(p >= 0.0 && p <= above)) {
      throw RecoveryError(
          ErrorCode::kNonMonotoneFragility,
          fmt::format("exceedance probability for '{}' ({}) exceeds the one "
                      "for the milder state ({})",
                      DamageStateName(static_cast<DamageState>(k + 1)), p,
                      above));
    }
    pmf[k] = above - p;
    above = p;
  }
  pmf[4] = above;
  return pmf;
}

DamagePmf ComputeDamagePmf(const ComponentFragility& fragility) {
  for (int k = 1; k < 4; ++k) {
    if (!(fragility.curves[k].median_im > fragility.curves[k - 1].median_im)) {
      throw RecoveryError(ErrorCode::kNonMonotoneFragility,
                          "fragility medians must increase with severity");
    }
  }
  std::array<double, 4> exceedance{};
  for (int k = 0; k < 4; ++k) {
    exceedance[k] = ExceedanceProb(fragility.im, fragility.curves[k]);
  }
  return PmfFromExceedances(exceedance);
}

void ValidateHazard(const Community& community, const HazardModel& hazard) {
  if (hazard.size() != community.size()) {
    throw RecoveryError(ErrorCode::kMissingFragility,
                        "hazard model does not cover every component");
  }
  for (size_t i = 0; i < hazard.size(); ++i) {
    const Component& comp = community.component(static_cast<int>(i));
    const ComponentHazard& h = hazard[i];
    if (comp.is_junction()) continue;
    if (std::holds_alternative<std::monostate>(h)) {
      throw RecoveryError(
          ErrorCode::kMissingFragility,
          fmt::format("component {} has no fragility, pmf or fixed damage",
                      comp.id));
    }
    if (const auto* f = std::get_if<ComponentFragility>(&h)) {
      ComputeDamagePmf(*f);
    } else if (const auto* pmf = std::get_if<DamagePmf>(&h)) {
      double sum = 0.0;
      for (const double p : *pmf) {
        if (!(p >= 0.0)) {
          throw RecoveryError(
              ErrorCode::kInvalidValue,
              fmt::format("component {}: pmf entries must be nonnegative",
                          comp.id));
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-9) {
        throw RecoveryError(
            ErrorCode::kInvalidValue,
            fmt::format("component {}: pmf sums to {}, not 1", comp.id, sum));
      }
    }
  }
}

DamageState SampleDamageState(const DamagePmf& pmf, Rng& rng) {
  const double u = rng.Uniform();
  double cumulative = 0.0;
  for (int k = 0; k < kNumDamageStates; ++k) {
    cumulative += pmf[k];
    if (u < cumulative) return static_cast<DamageState>(k);
  }
  // Rounding left u just above the total; take the last state with mass.
  for (int k = kNumDamageStates - 1; k >= 0; --k) {
    if (pmf[k] > 0.0) return static_cast<DamageState>(k);
  }
  return DamageState::kNone;
}

std::vector<DamageState> SampleInitialDamage(const Community& community,
                                             const HazardModel& hazard,
                                             Rng& rng) {
  ValidateHazard(community, hazard);
  std::vector<DamageState> damage(community.size(), DamageState::kNone);
  for (size_t i = 0; i < community.size(); ++i) {
    if (community.component(static_cast<int>(i)).is_junction()) continue;
    const ComponentHazard& h = hazard[i];
    if (const auto* fixed = std::get_if<DamageState>(&h)) {
      damage[i] = *fixed;
    } else if (const auto* pmf = std::get_if<DamagePmf>(&h)) {
      damage[i] = SampleDamageState(*pmf, rng);
    } else {
      damage[i] =
          SampleDamageState(ComputeDamagePmf(std::get<ComponentFragility>(h)),
                            rng);
    }
  }
  return damage;
}

}  // namespace recovery
