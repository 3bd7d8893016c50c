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

#include "recovery/scenario.h"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <map>
#include <sstream>

#include "fmt/core.h"
#include "json.hpp"
#include "recovery/error.h"

namespace recovery {

namespace {

using json = nlohmann::json;

// A JSON value plus the path that led to it, for error messages.
class Node {
 public:
  Node(const json& value, std::string path)
      : value_(&value), path_(std::move(path)) {}

  [[noreturn]] void Fail(std::string_view message) const {
    throw RecoveryError(ErrorCode::kParseError,
                        fmt::format("field '{}': {}", path_, message));
  }

  const std::string& path() const { return path_; }
  bool is_null() const { return value_->is_null(); }
  bool is_array() const { return value_->is_array(); }
  bool is_object() const { return value_->is_object(); }

  bool Has(std::string_view key) const {
    return value_->is_object() && value_->contains(key);
  }

  Node At(std::string_view key) const {
    if (!value_->is_object()) Fail("expected an object");
    const auto it = value_->find(key);
    if (it == value_->end()) {
      Fail(fmt::format("missing required key '{}'", key));
    }
    return Node(*it, Join(key));
  }

  std::optional<Node> Find(std::string_view key) const {
    if (!value_->is_object()) Fail("expected an object");
    const auto it = value_->find(key);
    if (it == value_->end() || it->is_null()) return std::nullopt;
    return Node(*it, Join(key));
  }

  std::vector<Node> Items() const {
    if (!value_->is_array()) Fail("expected an array");
    std::vector<Node> out;
    for (size_t i = 0; i < value_->size(); ++i) {
      out.emplace_back((*value_)[i], fmt::format("{}[{}]", path_, i));
    }
    return out;
  }

  // Rejects keys outside `allowed` so that typos do not pass silently.
  void ExpectKeys(std::initializer_list<std::string_view> allowed) const {
    if (!value_->is_object()) Fail("expected an object");
    for (const auto& [key, _] : value_->items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        Node(*value_, Join(key)).Fail("unknown key");
      }
    }
  }

  double AsDouble() const {
    if (!value_->is_number()) Fail("expected a number");
    return value_->get<double>();
  }

  int64_t AsInt64() const {
    if (!value_->is_number_integer()) Fail("expected an integer");
    return value_->get<int64_t>();
  }

  int AsInt() const {
    const int64_t v = AsInt64();
    if (v < std::numeric_limits<int>::min() ||
        v > std::numeric_limits<int>::max()) {
      Fail("integer out of range");
    }
    return static_cast<int>(v);
  }

  uint64_t AsUint64() const {
    if (!value_->is_number_unsigned()) Fail("expected a nonnegative integer");
    return value_->get<uint64_t>();
  }

  std::string AsString() const {
    if (!value_->is_string()) Fail("expected a string");
    return value_->get<std::string>();
  }

  Point AsPoint() const {
    const auto xy = Items();
    if (xy.size() != 2) Fail("expected [x, y]");
    return {xy[0].AsDouble(), xy[1].AsDouble()};
  }

  template <size_t N>
  std::array<double, N> AsDoubles() const {
    const auto items = Items();
    if (items.size() != N) Fail(fmt::format("expected {} numbers", N));
    std::array<double, N> out{};
    for (size_t i = 0; i < N; ++i) out[i] = items[i].AsDouble();
    return out;
  }

 private:
  std::string Join(std::string_view key) const {
    return path_.empty() ? std::string(key) : fmt::format("{}.{}", path_, key);
  }

  const json* value_;
  std::string path_;
};

ComponentClass ParseClassField(const Node& node) {
  const std::string name = node.AsString();
  const auto cls = ParseComponentClass(name);
  if (!cls) node.Fail(fmt::format("unknown component class '{}'", name));
  return *cls;
}

DamageState ParseDamageField(const Node& node) {
  const std::string name = node.AsString();
  const auto state = ParseDamageState(name);
  if (!state) node.Fail(fmt::format("unknown damage state '{}'", name));
  return *state;
}

Component ParseComponent(const Node& node) {
  node.ExpectKeys({"id", "class", "junction", "repair_days", "location"});
  Component c;
  c.id = node.At("id").AsInt();
  if (const auto junction = node.Find("junction")) {
    if (node.Has("class")) node.Fail("a junction has no class");
    const auto network = ParseNetwork(junction->AsString());
    if (!network) junction->Fail("expected 'epn' or 'wn'");
    c.network = *network;
  } else {
    c.cls = ParseClassField(node.At("class"));
    c.network = NetworkOf(*c.cls);
    if (const auto days = node.Find("repair_days")) {
      c.mean_repair_days = days->AsDoubles<4>();
    } else if (const auto defaults = DefaultRepairDays(*c.cls)) {
      c.mean_repair_days = *defaults;
    } else {
      node.Fail(fmt::format("class '{}' has no default repair times; give "
                            "repair_days",
                            ComponentClassName(*c.cls)));
    }
  }
  if (const auto loc = node.Find("location")) c.location = loc->AsPoint();
  return c;
}

Dependency ParseDependency(const Node& node) {
  Dependency d;
  if (node.is_array()) {
    const auto pair = node.Items();
    if (pair.size() != 2) node.Fail("expected [supplier, dependent]");
    d.supplier = pair[0].AsInt();
    d.dependent = pair[1].AsInt();
    return d;
  }
  node.ExpectKeys({"supplier", "dependent", "magnitude"});
  d.supplier = node.At("supplier").AsInt();
  d.dependent = node.At("dependent").AsInt();
  if (const auto m = node.Find("magnitude")) d.magnitude = m->AsDouble();
  return d;
}

CommunitySpec ParseCommunity(const Node& node) {
  node.ExpectKeys(
      {"gravity_exponent", "components", "dependencies", "cells", "retailers"});
  CommunitySpec spec;
  if (const auto p = node.Find("gravity_exponent")) {
    spec.gravity_exponent = p->AsDouble();
  }
  for (const Node& c : node.At("components").Items()) {
    spec.components.push_back(ParseComponent(c));
  }
  if (const auto deps = node.Find("dependencies")) {
    for (const Node& d : deps->Items()) {
      spec.dependencies.push_back(ParseDependency(d));
    }
  }
  for (const Node& n : node.At("cells").Items()) {
    n.ExpectKeys({"id", "population", "centroid", "power_feed", "water_feed"});
    GridCell cell;
    cell.id = n.At("id").AsInt();
    cell.population = n.At("population").AsInt64();
    cell.centroid = n.At("centroid").AsPoint();
    cell.power_feed = n.At("power_feed").AsInt();
    cell.water_feed = n.At("water_feed").AsInt();
    spec.cells.push_back(cell);
  }
  if (const auto retailers = node.Find("retailers")) {
    for (const Node& n : retailers->Items()) {
      n.ExpectKeys(
          {"id", "name", "capacity", "centroid", "power_feed", "water_feed"});
      Retailer r;
      r.id = n.At("id").AsInt();
      if (const auto name = n.Find("name")) r.name = name->AsString();
      r.capacity = n.At("capacity").AsDouble();
      r.centroid = n.At("centroid").AsPoint();
      r.power_feed = n.At("power_feed").AsInt();
      r.water_feed = n.At("water_feed").AsInt();
      spec.retailers.push_back(r);
    }
  }
  return spec;
}

FragilityCurves ParseCurves(const Node& node) {
  const auto items = node.Items();
  if (items.size() != 4) {
    node.Fail("expected four [median, beta] curves (minor..complete)");
  }
  FragilityCurves curves;
  for (size_t k = 0; k < 4; ++k) {
    const auto mb = items[k].AsDoubles<2>();
    curves[k] = {mb[0], mb[1]};
  }
  return curves;
}

HazardModel ParseHazard(const Node& node, const Community& community) {
  node.ExpectKeys({"class_fragility", "components", "default_damage"});
  std::map<ComponentClass, FragilityCurves> by_class;
  if (const auto classes = node.Find("class_fragility")) {
    if (!classes->is_object()) classes->Fail("expected an object");
    for (int c = 0; c < kNumComponentClasses; ++c) {
      const auto cls = static_cast<ComponentClass>(c);
      if (const auto curves = classes->Find(ComponentClassName(cls))) {
        by_class[cls] = ParseCurves(*curves);
      }
    }
    classes->ExpectKeys({"substation", "transmission_segment",
                         "distribution_segment", "water_tank", "well",
                         "pumping_plant", "pipeline"});
  }

  HazardModel hazard(community.size());
  if (const auto def = node.Find("default_damage")) {
    const DamageState state = ParseDamageField(*def);
    for (auto& h : hazard) h = state;
  }
  if (const auto entries = node.Find("components")) {
    for (const Node& n : entries->Items()) {
      n.ExpectKeys({"id", "im", "fragility", "pmf", "damage"});
      const int id = n.At("id").AsInt();
      const auto index = community.FindIndex(id);
      if (!index) {
        throw RecoveryError(
            ErrorCode::kDanglingFeedReference,
            fmt::format("field '{}': unknown component id {}", n.path(), id));
      }
      const Component& comp = community.component(*index);
      const int forms = n.Has("im") + n.Has("pmf") + n.Has("damage");
      if (forms != 1) n.Fail("give exactly one of 'im', 'pmf', 'damage'");
      if (n.Has("damage")) {
        hazard[*index] = ParseDamageField(n.At("damage"));
      } else if (n.Has("pmf")) {
        hazard[*index] = n.At("pmf").AsDoubles<kNumDamageStates>();
      } else {
        ComponentFragility f;
        f.im = n.At("im").AsDouble();
        if (const auto curves = n.Find("fragility")) {
          f.curves = ParseCurves(*curves);
        } else if (!comp.is_junction() && by_class.count(*comp.cls)) {
          f.curves = by_class.at(*comp.cls);
        } else {
          n.Fail("no fragility curves for this component or its class");
        }
        hazard[*index] = f;
      }
    }
  }
  ValidateHazard(community, hazard);
  return hazard;
}

MdpConfig ParseMdp(const Node& node) {
  node.ExpectKeys({"n_e", "n_w", "gamma", "objective", "alpha", "repair_model",
                   "work_distribution"});
  MdpConfig c;
  if (const auto v = node.Find("n_e")) c.n_e = v->AsInt();
  if (const auto v = node.Find("n_w")) c.n_w = v->AsInt();
  if (const auto v = node.Find("gamma")) c.gamma = v->AsDouble();
  if (const auto v = node.Find("alpha")) c.alpha = v->AsDouble();
  if (const auto v = node.Find("objective")) {
    const std::string s = v->AsString();
    if (s == "time_to_threshold") {
      c.objective = ObjectiveKind::kTimeToThreshold;
    } else if (s == "benefit_rate") {
      c.objective = ObjectiveKind::kBenefitRate;
    } else {
      v->Fail("expected 'time_to_threshold' or 'benefit_rate'");
    }
  }
  if (const auto v = node.Find("repair_model")) {
    const std::string s = v->AsString();
    if (s == "exponential") {
      c.repair_model = RepairModel::kExponential;
    } else if (s == "remaining_work") {
      c.repair_model = RepairModel::kRemainingWork;
    } else {
      v->Fail("expected 'exponential' or 'remaining_work'");
    }
  }
  if (const auto v = node.Find("work_distribution")) {
    const std::string s = v->AsString();
    if (s == "fixed") {
      c.work_distribution = WorkDistribution::kFixed;
    } else if (s == "exponential") {
      c.work_distribution = WorkDistribution::kExponential;
    } else {
      v->Fail("expected 'fixed' or 'exponential'");
    }
  }
  c.Validate();
  return c;
}

RolloutConfig ParseRollout(const Node& node) {
  node.ExpectKeys({"horizon", "n_mc_min", "n_mc_max", "se_threshold", "mode",
                   "action_cap", "threads", "improvement_margin"});
  RolloutConfig c;
  if (const auto v = node.Find("horizon")) c.horizon = v->AsInt();
  if (const auto v = node.Find("n_mc_min")) c.n_mc_min = v->AsInt();
  if (const auto v = node.Find("n_mc_max")) c.n_mc_max = v->AsInt();
  if (const auto v = node.Find("se_threshold")) c.se_threshold = v->AsDouble();
  if (const auto v = node.Find("action_cap")) c.action_cap = v->AsUint64();
  if (const auto v = node.Find("threads")) c.threads = v->AsInt();
  if (const auto v = node.Find("improvement_margin")) {
    c.improvement_margin = v->AsDouble();
  }
  if (const auto v = node.Find("mode")) {
    const std::string s = v->AsString();
    if (s == "mean") {
      c.mode = Aggregation::kMean;
    } else if (s == "worst") {
      c.mode = Aggregation::kWorstCase;
    } else {
      v->Fail("expected 'mean' or 'worst'");
    }
  }
  c.Validate();
  return c;
}

PriorityBasePolicy ParseBasePolicy(const Node& node) {
  node.ExpectKeys({"epn_priority", "wn_priority"});
  PriorityBasePolicy p;
  auto read = [](const Node& list) {
    std::vector<ComponentClass> out;
    for (const Node& n : list.Items()) out.push_back(ParseClassField(n));
    return out;
  };
  if (const auto v = node.Find("epn_priority")) p.epn_priority = read(*v);
  if (const auto v = node.Find("wn_priority")) p.wn_priority = read(*v);
  p.Validate();
  return p;
}

}  // namespace

Scenario ParseScenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const size_t offset = std::min<size_t>(e.byte, text.size());
    const size_t line =
        1 + std::count(text.begin(), text.begin() + offset, '\n');
    throw RecoveryError(ErrorCode::kParseError,
                        fmt::format("line {}: {}", line, e.what()));
  }
  const Node root(doc, "");
  root.ExpectKeys(
      {"name", "seed", "community", "hazard", "mdp", "rollout", "base_policy"});

  Community community = BuildCommunity(ParseCommunity(root.At("community")));
  HazardModel hazard = ParseHazard(root.At("hazard"), community);
  const json empty = json::object();
  auto section = [&](std::string_view key) {
    const auto n = root.Find(key);
    return n ? *n : Node(empty, std::string(key));
  };
  Scenario s{
      .name = root.Has("name") ? root.At("name").AsString() : std::string(),
      .community = std::move(community),
      .hazard = std::move(hazard),
      .mdp = ParseMdp(section("mdp")),
      .rollout = ParseRollout(section("rollout")),
      .base_policy = ParseBasePolicy(section("base_policy")),
      .seed = root.Has("seed") ? root.At("seed").AsUint64() : uint64_t{1},
  };
  return s;
}

Scenario LoadScenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw RecoveryError(ErrorCode::kIoError,
                        fmt::format("cannot read '{}'", path.string()));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseScenario(buffer.str());
}

}  // namespace recovery
