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

#include "recovery/community.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "fmt/core.h"
#include "recovery/error.h"

namespace recovery {

namespace {

constexpr std::array<std::string_view, kNumComponentClasses> kClassNames = {
    "substation", "transmission_segment", "distribution_segment",
    "water_tank", "well",                 "pumping_plant",
    "pipeline"};

constexpr std::array<std::string_view, kNumDamageStates> kDamageNames = {
    "none", "minor", "moderate", "extensive", "complete"};

int NetworkSlot(Network n) { return n == Network::kPower ? 0 : 1; }

void ValidateRepairDays(const Component& c) {
  for (size_t k = 0; k < c.mean_repair_days.size(); ++k) {
    const double d = c.mean_repair_days[k];
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw RecoveryError(
          ErrorCode::kNonPositiveRepairTime,
          fmt::format("component {}: repair time for '{}' must be positive",
                      c.id, kDamageNames[k + 1]));
    }
    if (k > 0 && d < c.mean_repair_days[k - 1]) {
      throw RecoveryError(
          ErrorCode::kInvalidValue,
          fmt::format("component {}: repair times must be nondecreasing in "
                      "damage severity",
                      c.id));
    }
  }
}

bool SupplierAllowed(const Component& supplier, const Component& dependent) {
  if (dependent.network == Network::kPower) {
    return supplier.network == Network::kPower;
  }
  if (dependent.cls == ComponentClass::kPipeline) {
    return supplier.network == Network::kWater;
  }
  // Tanks, wells, pumping plants and water junctions may draw on both.
  return true;
}

}  // namespace

Network NetworkOf(ComponentClass cls) {
  switch (cls) {
    case ComponentClass::kSubstation:
    case ComponentClass::kTransmissionSegment:
    case ComponentClass::kDistributionSegment:
      return Network::kPower;
    default:
      return Network::kWater;
  }
}

std::string_view NetworkName(Network network) {
  return network == Network::kPower ? "epn" : "wn";
}

std::optional<Network> ParseNetwork(std::string_view name) {
  if (name == "epn") return Network::kPower;
  if (name == "wn") return Network::kWater;
  return std::nullopt;
}

std::string_view ComponentClassName(ComponentClass cls) {
  return kClassNames[static_cast<int>(cls)];
}

std::optional<ComponentClass> ParseComponentClass(std::string_view name) {
  for (int i = 0; i < kNumComponentClasses; ++i) {
    if (kClassNames[i] == name) return static_cast<ComponentClass>(i);
  }
  return std::nullopt;
}

std::string_view DamageStateName(DamageState state) {
  return kDamageNames[static_cast<int>(state)];
}

std::optional<DamageState> ParseDamageState(std::string_view name) {
  for (int i = 0; i < kNumDamageStates; ++i) {
    if (kDamageNames[i] == name) return static_cast<DamageState>(i);
  }
  return std::nullopt;
}

std::optional<RepairDays> DefaultRepairDays(ComponentClass cls) {
  switch (cls) {
    case ComponentClass::kSubstation:
      return RepairDays{1.0, 3.0, 7.0, 30.0};
    case ComponentClass::kTransmissionSegment:
      return RepairDays{0.5, 1.0, 1.0, 2.0};
    case ComponentClass::kDistributionSegment:
      return RepairDays{0.5, 1.0, 1.0, 1.0};
    case ComponentClass::kWaterTank:
      return RepairDays{1.2, 3.1, 93.0, 155.0};
    case ComponentClass::kWell:
      return RepairDays{0.8, 1.5, 10.5, 26.0};
    case ComponentClass::kPumpingPlant:
      return RepairDays{0.9, 3.1, 13.5, 35.0};
    case ComponentClass::kPipeline:
      return std::nullopt;
  }
  return std::nullopt;
}

double Distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double Component::MeanRepairDays(DamageState state) const {
  if (state == DamageState::kNone) {
    throw RecoveryError(ErrorCode::kInvalidValue,
                        fmt::format("component {} is not damaged", id));
  }
  return mean_repair_days[static_cast<int>(state) - 1];
}

WeightMatrix GravityWeights(std::span<const GridCell> cells,
                            std::span<const Retailer> retailers,
                            double exponent) {
  if (retailers.empty()) {
    throw RecoveryError(ErrorCode::kNoRetailers,
                        "gravity model needs at least one retailer");
  }
  WeightMatrix w(cells.size(), retailers.size());
  for (size_t i = 0; i < cells.size(); ++i) {
    double row = 0.0;
    for (size_t j = 0; j < retailers.size(); ++j) {
      const double d = Distance(cells[i].centroid, retailers[j].centroid);
      if (d == 0.0) {
        throw RecoveryError(
            ErrorCode::kZeroDistance,
            fmt::format("cell {} is co-located with retailer {}", cells[i].id,
                        retailers[j].id));
      }
      w(i, j) = retailers[j].capacity * std::pow(d, -exponent);
      row += w(i, j);
    }
    for (size_t j = 0; j < retailers.size(); ++j) w(i, j) /= row;
  }
  return w;
}

std::optional<int> Community::FindIndex(int id) const {
  const auto it = index_of_.find(id);
  if (it == index_of_.end()) return std::nullopt;
  return it->second;
}

int Community::IndexOf(int id) const {
  const auto idx = FindIndex(id);
  if (!idx) {
    throw RecoveryError(ErrorCode::kDanglingFeedReference,
                        fmt::format("unknown component id {}", id));
  }
  return *idx;
}

int Community::physical_count(Network network) const {
  return physical_count_[NetworkSlot(network)];
}

Community BuildCommunity(const CommunitySpec& spec) {
  Community c;
  c.components_ = spec.components;
  c.dependencies_ = spec.dependencies;
  c.cells_ = spec.cells;
  c.retailers_ = spec.retailers;
  c.gravity_exponent_ = spec.gravity_exponent;

  if (!(spec.gravity_exponent > 0.0) || !std::isfinite(spec.gravity_exponent)) {
    throw RecoveryError(ErrorCode::kInvalidValue,
                        "gravity exponent must be positive");
  }

  const int n = static_cast<int>(c.components_.size());
  for (int i = 0; i < n; ++i) {
    Component& comp = c.components_[i];
    if (!c.index_of_.emplace(comp.id, i).second) {
      throw RecoveryError(ErrorCode::kDuplicateId,
                          fmt::format("duplicate component id {}", comp.id));
    }
    if (!comp.is_junction()) {
      comp.network = NetworkOf(*comp.cls);
      ValidateRepairDays(comp);
      ++c.physical_count_[NetworkSlot(comp.network)];
    }
  }

  c.suppliers_.assign(n, {});
  std::vector<std::vector<int>> dependents(n);
  for (const Dependency& dep : c.dependencies_) {
    const int s = c.IndexOf(dep.supplier);
    const int d = c.IndexOf(dep.dependent);
    if (!(dep.magnitude > 0.0 && dep.magnitude <= 1.0)) {
      throw RecoveryError(
          ErrorCode::kInvalidValue,
          fmt::format("dependency {} -> {}: magnitude must be in (0, 1]",
                      dep.supplier, dep.dependent));
    }
    if (s == d) {
      throw RecoveryError(
          ErrorCode::kCycleInDependencies,
          fmt::format("component {} depends on itself", dep.supplier));
    }
    if (!SupplierAllowed(c.components_[s], c.components_[d])) {
      throw RecoveryError(
          ErrorCode::kCrossNetworkViolation,
          fmt::format("component {} ({}) cannot be supplied by {} ({})",
                      dep.dependent, NetworkName(c.components_[d].network),
                      dep.supplier, NetworkName(c.components_[s].network)));
    }
    if (std::find(c.suppliers_[d].begin(), c.suppliers_[d].end(), s) !=
        c.suppliers_[d].end()) {
      continue;
    }
    c.suppliers_[d].push_back(s);
    dependents[s].push_back(d);
  }
  for (int i = 0; i < n; ++i) {
    std::sort(c.suppliers_[i].begin(), c.suppliers_[i].end());
    if (c.components_[i].is_junction() && c.suppliers_[i].empty()) {
      throw RecoveryError(
          ErrorCode::kInvalidValue,
          fmt::format("junction {} has no suppliers", c.components_[i].id));
    }
  }

  // Kahn's algorithm, smallest index first so the order is canonical.
  std::vector<int> indegree(n);
  for (int i = 0; i < n; ++i) {
    indegree[i] = static_cast<int>(c.suppliers_[i].size());
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  while (!ready.empty()) {
    const int u = ready.top();
    ready.pop();
    c.topo_order_.push_back(u);
    for (const int v : dependents[u]) {
      if (--indegree[v] == 0) ready.push(v);
    }
  }
  if (static_cast<int>(c.topo_order_.size()) != n) {
    for (int i = 0; i < n; ++i) {
      if (indegree[i] > 0) {
        throw RecoveryError(
            ErrorCode::kCycleInDependencies,
            fmt::format("component {} lies on a dependency cycle",
                        c.components_[i].id));
      }
    }
  }

  auto resolve_feeds = [&](std::string_view what, int owner, int power,
                           int water) {
    Community::FeedIndices f;
    const auto p = c.FindIndex(power);
    const auto w = c.FindIndex(water);
    if (!p || !w) {
      throw RecoveryError(
          ErrorCode::kDanglingFeedReference,
          fmt::format("{} {}: feed component {} does not exist", what, owner,
                      p ? water : power));
    }
    if (c.components_[*p].network != Network::kPower) {
      throw RecoveryError(
          ErrorCode::kCrossNetworkViolation,
          fmt::format("{} {}: power_feed {} is not an EPN component", what,
                      owner, power));
    }
    if (c.components_[*w].network != Network::kWater) {
      throw RecoveryError(
          ErrorCode::kCrossNetworkViolation,
          fmt::format("{} {}: water_feed {} is not a WN component", what,
                      owner, water));
    }
    f.power = *p;
    f.water = *w;
    return f;
  };

  for (const GridCell& cell : c.cells_) {
    if (cell.population < 0) {
      throw RecoveryError(
          ErrorCode::kInvalidValue,
          fmt::format("cell {}: population must be nonnegative", cell.id));
    }
    c.total_population_ += static_cast<double>(cell.population);
    c.cell_feeds_.push_back(
        resolve_feeds("cell", cell.id, cell.power_feed, cell.water_feed));
  }
  for (const Retailer& r : c.retailers_) {
    if (!(r.capacity > 0.0)) {
      throw RecoveryError(
          ErrorCode::kInvalidValue,
          fmt::format("retailer {}: capacity must be positive", r.id));
    }
    c.retailer_feeds_.push_back(
        resolve_feeds("retailer", r.id, r.power_feed, r.water_feed));
  }

  if (c.retailers_.empty()) {
    c.weights_ = WeightMatrix(c.cells_.size(), 0);
  } else {
    c.weights_ = GravityWeights(c.cells_, c.retailers_, c.gravity_exponent_);
  }
  return c;
}

std::vector<bool> FunctionalSet(const Community& community,
                                std::span<const DamageState> damage) {
  std::vector<bool> functional(community.size(), false);
  for (const int i : community.topological_order()) {
    const auto& sup = community.suppliers(i);
    if (community.component(i).is_junction()) {
      functional[i] = std::any_of(sup.begin(), sup.end(),
                                  [&](int s) { return functional[s]; });
    } else {
      functional[i] =
          damage[i] == DamageState::kNone &&
          std::all_of(sup.begin(), sup.end(),
                      [&](int s) { return functional[s]; });
    }
  }
  return functional;
}

ServiceStatus GetServiceStatus(const Community& community,
                               const std::vector<bool>& functional) {
  ServiceStatus status;
  status.cells.reserve(community.cells().size());
  for (const auto& f : community.cell_feeds()) {
    status.cells.push_back({functional[f.power], functional[f.water]});
  }
  status.retailers.reserve(community.retailers().size());
  for (const auto& f : community.retailer_feeds()) {
    status.retailers.push_back({functional[f.power], functional[f.water]});
  }
  return status;
}

double BenefitCount(const Community& community, const ServiceStatus& status,
                    const WeightMatrix& weights) {
  double total = 0.0;
  const auto& cells = community.cells();
  for (size_t i = 0; i < cells.size(); ++i) {
    if (!status.cells[i].served()) continue;
    double reach = 0.0;
    for (size_t j = 0; j < status.retailers.size(); ++j) {
      if (status.retailers[j].served()) reach += weights(i, j);
    }
    total += static_cast<double>(cells[i].population) * std::min(reach, 1.0);
  }
  return total;
}

double BenefitCount(const Community& community, const ServiceStatus& status) {
  return BenefitCount(community, status, community.weights());
}

}  // namespace recovery
