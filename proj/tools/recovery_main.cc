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

// Command-line front end: plan, compare, oracle-check, sample-damage.
//
// Exit status: 0 on success, 1 on usage or validation errors, 2 on I/O
// errors.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "recovery/error.h"
#include "recovery/evaluation.h"
#include "recovery/report.h"
#include "recovery/scenario.h"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct Options {
  std::string scenario;
  std::optional<uint64_t> seed;
  int episodes = 10;
  std::string policy = "rollout";
  std::optional<std::string> mode;
  std::string out = "out";
  bool svg = false;
};

recovery::Scenario Load(const Options& opt) {
  recovery::Scenario s = recovery::LoadScenario(opt.scenario);
  if (opt.mode) {
    s.rollout.mode = *opt.mode == "worst" ? recovery::Aggregation::kWorstCase
                                          : recovery::Aggregation::kMean;
  }
  return s;
}

uint64_t SeedFor(const Options& opt, const recovery::Scenario& s) {
  return opt.seed.value_or(s.seed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Post-hazard recovery scheduling with rollout"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", opt.scenario, "Scenario file")
        ->required();
    cmd->add_option("--seed", opt.seed, "Seed (defaults to the scenario's)");
  };
  auto add_mode = [&](CLI::App* cmd) {
    cmd->add_option("--mode", opt.mode, "Q aggregation")
        ->check(CLI::IsMember({"mean", "worst"}));
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", opt.out, "Output directory");
    cmd->add_flag("--svg", opt.svg, "Also write SVG restoration curves");
  };

  CLI::App* plan = app.add_subcommand("plan", "Run one policy");
  add_common(plan);
  plan->add_option("--episodes", opt.episodes, "Episodes")
      ->check(CLI::PositiveNumber);
  plan->add_option("--policy", opt.policy, "Policy")
      ->check(CLI::IsMember({"base", "rollout"}));
  add_mode(plan);
  add_out(plan);

  CLI::App* compare =
      app.add_subcommand("compare", "Paired base vs rollout comparison");
  add_common(compare);
  compare->add_option("--episodes", opt.episodes, "Episodes")
      ->check(CLI::PositiveNumber);
  add_mode(compare);
  add_out(compare);

  CLI::App* oracle = app.add_subcommand(
      "oracle-check", "Rollout vs exhaustive optimum on the deterministic variant");
  add_common(oracle);
  add_mode(oracle);

  CLI::App* sample =
      app.add_subcommand("sample-damage", "Print one sampled damage vector");
  add_common(sample);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    const recovery::Scenario scenario = Load(opt);
    const uint64_t seed = SeedFor(opt, scenario);
    if (plan->parsed()) {
      const auto policy = opt.policy == "base" ? recovery::PolicyKind::kBase
                                               : recovery::PolicyKind::kRollout;
      const auto report = recovery::CmdPlan(scenario, policy, opt.episodes,
                                            seed, opt.out, opt.svg);
      std::cout << report.summary;
    } else if (compare->parsed()) {
      const auto report =
          recovery::CmdCompare(scenario, opt.episodes, seed, opt.out, opt.svg);
      std::cout << report.summary;
    } else if (oracle->parsed()) {
      const auto report = recovery::CmdOracleCheck(scenario, seed);
      std::cout << report.summary;
      return report.pass ? 0 : kExitValidation;
    } else if (sample->parsed()) {
      std::cout << recovery::DamageCsv(
          scenario.community, recovery::EpisodeDamage(scenario, seed, 0));
    }
  } catch (const recovery::RecoveryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == recovery::ErrorCode::kIoError ? kExitIo : kExitValidation;
  }
  return 0;
}
