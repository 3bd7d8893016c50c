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

#ifndef RECOVERY_COMMUNITY_H_
#define RECOVERY_COMMUNITY_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace recovery {

// EPN and WN.
enum class Network { kPower, kWater };

enum class ComponentClass {
  kSubstation,
  kTransmissionSegment,
  kDistributionSegment,
  kWaterTank,
  kWell,
  kPumpingPlant,
  kPipeline,
};
inline constexpr int kNumComponentClasses = 7;

// Ordered by severity; kNone counts as one of the five states.
enum class DamageState : uint8_t {
  kNone,
  kMinor,
  kModerate,
  kExtensive,
  kComplete,
};
inline constexpr int kNumDamageStates = 5;

Network NetworkOf(ComponentClass cls);
std::string_view NetworkName(Network network);
std::optional<Network> ParseNetwork(std::string_view name);
std::string_view ComponentClassName(ComponentClass cls);
std::optional<ComponentClass> ParseComponentClass(std::string_view name);
std::string_view DamageStateName(DamageState state);
std::optional<DamageState> ParseDamageState(std::string_view name);

// Mean repair time in days for Minor, Moderate, Extensive, Complete.
using RepairDays = std::array<double, 4>;

// Expected repair times per damage state for the classes that have published
// values. Pipelines have none and must be given explicitly.
std::optional<RepairDays> DefaultRepairDays(ComponentClass cls);

struct Point {
  double x = 0.0;  // km
  double y = 0.0;  // km
};

double Distance(const Point& a, const Point& b);

struct Component {
  int id = 0;
  // Empty for an any-of junction: a virtual node that is never damaged and
  // is functional when at least one of its suppliers is. Junctions express
  // redundant feeds, which a pure AND graph cannot.
  std::optional<ComponentClass> cls;
  Network network = Network::kPower;
  RepairDays mean_repair_days{};
  std::optional<Point> location;

  bool is_junction() const { return !cls.has_value(); }
  // Requires a physical component and a damaged state.
  double MeanRepairDays(DamageState state) const;
};

struct Dependency {
  int supplier = 0;
  int dependent = 0;
  // Adjacency magnitude in (0, 1]. Recorded but every listed edge is treated
  // as a hard dependency.
  double magnitude = 1.0;
};

struct GridCell {
  int id = 0;
  int64_t population = 0;
  Point centroid;
  int power_feed = 0;  // component id
  int water_feed = 0;  // component id
};

struct Retailer {
  int id = 0;
  std::string name;
  double capacity = 1.0;
  Point centroid;
  int power_feed = 0;
  int water_feed = 0;
};

struct CommunitySpec {
  std::vector<Component> components;
  std::vector<Dependency> dependencies;
  std::vector<GridCell> cells;
  std::vector<Retailer> retailers;
  double gravity_exponent = 2.0;
};

// Dense row-major cell x retailer matrix.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  WeightMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  double& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  double operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> data_;
};

// Row-normalized capacity * distance^-exponent. Throws kNoRetailers and
// kZeroDistance.
WeightMatrix GravityWeights(std::span<const GridCell> cells,
                            std::span<const Retailer> retailers,
                            double exponent);

// Validated, immutable community. Components are addressed internally by
// their position ("index") in components(); ids are only used at the edges.
class Community {
 public:
  struct FeedIndices {
    int power = -1;
    int water = -1;
  };

  const std::vector<Component>& components() const { return components_; }
  const std::vector<GridCell>& cells() const { return cells_; }
  const std::vector<Retailer>& retailers() const { return retailers_; }
  const std::vector<Dependency>& dependencies() const { return dependencies_; }
  size_t size() const { return components_.size(); }

  const Component& component(int index) const { return components_[index]; }
  std::optional<int> FindIndex(int id) const;
  // Throws kDanglingFeedReference for unknown ids.
  int IndexOf(int id) const;

  const std::vector<int>& suppliers(int index) const { return suppliers_[index]; }
  const std::vector<int>& topological_order() const { return topo_order_; }
  const std::vector<FeedIndices>& cell_feeds() const { return cell_feeds_; }
  const std::vector<FeedIndices>& retailer_feeds() const { return retailer_feeds_; }

  double gravity_exponent() const { return gravity_exponent_; }
  // Empty (cells x 0) when the community has no retailers.
  const WeightMatrix& weights() const { return weights_; }
  double total_population() const { return total_population_; }
  // Physical (non-junction) component count per network.
  int physical_count(Network network) const;

 private:
  friend Community BuildCommunity(const CommunitySpec& spec);
  Community() = default;

  std::vector<Component> components_;
  std::vector<Dependency> dependencies_;
  std::vector<GridCell> cells_;
  std::vector<Retailer> retailers_;
  std::unordered_map<int, int> index_of_;
  std::vector<std::vector<int>> suppliers_;
  std::vector<int> topo_order_;
  std::vector<FeedIndices> cell_feeds_;
  std::vector<FeedIndices> retailer_feeds_;
  double gravity_exponent_ = 2.0;
  WeightMatrix weights_;
  double total_population_ = 0.0;
  std::array<int, 2> physical_count_{};
};

// Validates the spec and resolves every reference. Throws RecoveryError with
// kCycleInDependencies, kDanglingFeedReference, kCrossNetworkViolation,
// kNonPositiveRepairTime, kDuplicateId, kZeroDistance or kInvalidValue.
Community BuildCommunity(const CommunitySpec& spec);

// Indicator per component index. A physical component is functional iff it
// is undamaged and all its suppliers are functional; a junction iff any
// supplier is functional.
std::vector<bool> FunctionalSet(const Community& community,
                                std::span<const DamageState> damage);

struct ServiceStatus {
  struct Access {
    bool has_power = false;
    bool has_water = false;
    bool served() const { return has_power && has_water; }
  };
  std::vector<Access> cells;
  std::vector<Access> retailers;
};

ServiceStatus GetServiceStatus(const Community& community,
                               const std::vector<bool>& functional);

// Expected number of persons whose cell has power and water and whose
// gravity-weighted retailer has power and water.
double BenefitCount(const Community& community, const ServiceStatus& status,
                    const WeightMatrix& weights);
double BenefitCount(const Community& community, const ServiceStatus& status);

}  // namespace recovery

#endif  // RECOVERY_COMMUNITY_H_
