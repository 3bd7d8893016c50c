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

#ifndef RECOVERY_SCENARIO_H_
#define RECOVERY_SCENARIO_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "recovery/community.h"
#include "recovery/hazard.h"
#include "recovery/mdp.h"
#include "recovery/planner.h"

namespace recovery {

// One reproducible experiment: the community, how it gets damaged, the MDP
// and the planner settings.
struct Scenario {
  std::string name;
  Community community;
  HazardModel hazard;
  MdpConfig mdp;
  RolloutConfig rollout;
  PriorityBasePolicy base_policy;
  uint64_t seed = 1;
};

// Parses and validates scenario text (JSON, schema in README.md). Syntax and
// schema problems raise kParseError naming the line or the field path;
// semantic problems raise the code of the failed check (for example
// kDanglingFeedReference).
Scenario ParseScenario(std::string_view text);

// Reads a scenario file. Throws kIoError when the file cannot be read.
Scenario LoadScenario(const std::filesystem::path& path);

}  // namespace recovery

#endif  // RECOVERY_SCENARIO_H_
