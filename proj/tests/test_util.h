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

#ifndef RECOVERY_TESTS_TEST_UTIL_H_
#define RECOVERY_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "recovery/community.h"
#include "recovery/mdp.h"
#include "recovery/random.h"

namespace recovery::testing {

// Fluent construction of small communities for tests.
class CommunityBuilder {
 public:
  CommunityBuilder& Add(int id, ComponentClass cls,
                        RepairDays days = {1.0, 2.0, 3.0, 4.0}) {
    Component c;
    c.id = id;
    c.cls = cls;
    c.network = NetworkOf(cls);
    c.mean_repair_days = days;
    spec_.components.push_back(c);
    return *this;
  }

  CommunityBuilder& Junction(int id, Network network) {
    Component c;
    c.id = id;
    c.network = network;
    spec_.components.push_back(c);
    return *this;
  }

  CommunityBuilder& Edge(int supplier, int dependent) {
    spec_.dependencies.push_back({supplier, dependent, 1.0});
    return *this;
  }

  CommunityBuilder& Cell(int id, int64_t population, Point centroid, int power,
                         int water) {
    spec_.cells.push_back({id, population, centroid, power, water});
    return *this;
  }

  CommunityBuilder& Shop(int id, double capacity, Point centroid, int power,
                         int water) {
    Retailer r;
    r.id = id;
    r.capacity = capacity;
    r.centroid = centroid;
    r.power_feed = power;
    r.water_feed = water;
    spec_.retailers.push_back(r);
    return *this;
  }

  CommunityBuilder& Exponent(double p) {
    spec_.gravity_exponent = p;
    return *this;
  }

  const CommunitySpec& spec() const { return spec_; }
  Community Build() const { return BuildCommunity(spec_); }

 private:
  CommunitySpec spec_;
};

// Reference for FunctionalSet: start from every undamaged component and keep
// removing components whose suppliers rule them out until nothing changes.
inline std::vector<bool> IterativeRemovalFixedPoint(
    const Community& community, const std::vector<DamageState>& damage) {
  const size_t n = community.size();
  std::vector<bool> alive(n);
  for (size_t i = 0; i < n; ++i) {
    alive[i] = community.component(static_cast<int>(i)).is_junction() ||
               damage[i] == DamageState::kNone;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      const auto& sup = community.suppliers(static_cast<int>(i));
      bool remove;
      if (community.component(static_cast<int>(i)).is_junction()) {
        remove = true;
        for (const int s : sup) remove = remove && !alive[s];
      } else {
        remove = false;
        for (const int s : sup) remove = remove || !alive[s];
      }
      if (remove) {
        alive[i] = false;
        changed = true;
      }
    }
  }
  return alive;
}

// Random network-consistent DAG with n components (n >= 2), optionally with
// any-of junctions. Nodes are created in a random topological order; edges
// only go forward.
inline Community RandomDag(int n, Rng& rng, bool junctions = false) {
  CommunityBuilder b;
  std::vector<Network> net(n);
  std::vector<bool> is_pipe(n, false), is_junction(n, false);
  const int n_epn = 1 + static_cast<int>(rng.UniformIndex(n - 1));
  for (int i = 0; i < n; ++i) {
    const int id = 100 + i;
    if (junctions && i > 0 && rng.Uniform() < 0.15) {
      net[i] = i < n_epn ? Network::kPower : Network::kWater;
      is_junction[i] = true;
      b.Junction(id, net[i]);
      continue;
    }
    ComponentClass cls;
    if (i < n_epn) {
      cls = static_cast<ComponentClass>(rng.UniformIndex(3));
    } else {
      cls = static_cast<ComponentClass>(3 + rng.UniformIndex(4));
    }
    net[i] = NetworkOf(cls);
    is_pipe[i] = cls == ComponentClass::kPipeline;
    b.Add(id, cls);
  }
  for (int d = 1; d < n; ++d) {
    int added = 0;
    for (int s = 0; s < d; ++s) {
      const bool allowed =
          net[d] == Network::kPower ? net[s] == Network::kPower
                                    : (!is_pipe[d] || net[s] == Network::kWater);
      if (allowed && rng.Uniform() < 0.2) {
        b.Edge(100 + s, 100 + d);
        ++added;
      }
    }
    if (is_junction[d] && added == 0) {
      // Junctions need a supplier; the previous node of a compatible network
      // always exists because node 0 is EPN.
      for (int s = d - 1; s >= 0; --s) {
        const bool allowed =
            net[d] == Network::kPower ? net[s] == Network::kPower : true;
        if (allowed) {
          b.Edge(100 + s, 100 + d);
          break;
        }
      }
    }
  }
  return b.Build();
}

inline std::vector<DamageState> RandomDamage(const Community& community,
                                             Rng& rng, double p_damaged) {
  std::vector<DamageState> damage(community.size(), DamageState::kNone);
  for (size_t i = 0; i < community.size(); ++i) {
    if (community.component(static_cast<int>(i)).is_junction()) continue;
    if (rng.Uniform() < p_damaged) {
      damage[i] = static_cast<DamageState>(1 + rng.UniformIndex(4));
    }
  }
  return damage;
}

// Two-sample Kolmogorov-Smirnov statistic.
inline double KsStatistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                             static_cast<double>(j) / b.size()));
  }
  return d;
}

// Critical value of the two-sample KS statistic at significance level
// `level` (asymptotic).
inline double KsCritical(size_t n, size_t m, double level) {
  const double c = std::sqrt(-0.5 * std::log(level / 2.0));
  return c * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * m));
}

}  // namespace recovery::testing

#endif  // RECOVERY_TESTS_TEST_UTIL_H_
