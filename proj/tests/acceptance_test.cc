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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <fmt/core.h>

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "recovery/community.h"
#include "recovery/evaluation.h"
#include "recovery/hazard.h"
#include "recovery/mdp.h"
#include "recovery/oracle.h"
#include "recovery/planner.h"
#include "recovery/report.h"
#include "recovery/scenario.h"
#include "test_util.h"

namespace recovery {
namespace {

namespace fs = std::filesystem;
using testing::CommunityBuilder;

const std::string kScenarioDir = RECOVERY_SCENARIO_DIR;
const std::string kFixtureDir = RECOVERY_FIXTURE_DIR;

// Tolerances and budgets.
constexpr double kMeanCompletionDays = 2.1;  // 1 / (1/3 + 1/7)
constexpr double kMeanCompletionRelTol = 0.02;
constexpr int kSamples = 100000;
constexpr double kKsLevel = 0.01;
constexpr int kRandomDags = 1000;
constexpr int kMaxDagNodes = 30;
constexpr int kPairedEpisodes = 30;
constexpr uint64_t kPairedSeed = 7;
constexpr double kNotWorseShare = 0.95;
constexpr double kTestLevel = 0.05;
constexpr int kOracleInstances = 50;
constexpr int kOracleMaxDamagedHere = 6;
constexpr double kOracleGap = 0.05;
constexpr double kSeThreshold = 0.05;
constexpr double kFragilityTol = 1e-12;
constexpr int kImSweepPoints = 100;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------

// Binomial coefficients from Pascal's triangle.
uint64_t Choose(int n, int k) {
  std::vector<std::vector<uint64_t>> t(n + 1);
  for (int i = 0; i <= n; ++i) {
    t[i].assign(i + 1, 1);
    for (int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
  }
  return t[n][k];
}

Outcome ActionSetSize() {
  const auto start = Clock::now();
  CommunityBuilder b;
  for (int i = 0; i < 8; ++i) b.Add(1 + i, ComponentClass::kSubstation);
  for (int i = 0; i < 8; ++i) b.Add(11 + i, ComponentClass::kWell);
  const Community c = b.Build();
  int cases = 0, mismatches = 0;
  for (int le = 0; le <= 8; ++le) {
    for (int lw = 0; lw <= 8; ++lw) {
      if (le + lw == 0) continue;  // terminal: no action to enumerate
      RecoveryState st;
      st.damage.assign(c.size(), DamageState::kNone);
      for (int i = 0; i < le; ++i) st.damage[i] = DamageState::kMinor;
      for (int i = 0; i < lw; ++i) st.damage[8 + i] = DamageState::kMinor;
      for (int ne = 1; ne <= 3; ++ne) {
        for (int nw = 1; nw <= 3; ++nw) {
          MdpConfig m;
          m.n_e = ne;
          m.n_w = nw;
          Rng rng(0);
          const auto actions = EnumerateActions(st, c, m, 1'000'000, rng);
          const std::set<RepairAction> distinct(actions.begin(), actions.end());
          bool admissible = true;
          for (const auto& a : actions) {
            admissible = admissible && IsAdmissible(st, a, c, m);
          }
          const uint64_t expected =
              Choose(le, std::min(ne, le)) * Choose(lw, std::min(nw, lw));
          ++cases;
          if (actions.size() != expected || distinct.size() != expected ||
              !admissible || CountAdmissible(st, c, m) != expected) {
            ++mismatches;
          }
        }
      }
    }
  }
  const double secs = Seconds(start);
  return {mismatches == 0 && secs < 1.0,
          fmt::format("{} cases, {} mismatches, {:.2f} s (limit 1 s)", cases,
                      mismatches, secs)};
}

// ---------------------------------------------------------------------------

Outcome MinOfExponentials() {
  const auto start = Clock::now();
  const Community c = CommunityBuilder()
                          .Add(1, ComponentClass::kSubstation, {3, 3, 3, 3})
                          .Add(2, ComponentClass::kSubstation, {7, 7, 7, 7})
                          .Build();
  MdpConfig m;
  m.n_e = 2;
  RecoveryState st;
  st.damage = {DamageState::kMinor, DamageState::kMinor};
  const RepairAction both{{true, true}};
  Rng rng(2024);
  double sum = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    sum += Step(st, both, c, m, rng).completion_time;
  }
  const double mean = sum / kSamples;
  const double rel = std::abs(mean - kMeanCompletionDays) / kMeanCompletionDays;
  const double secs = Seconds(start);
  return {rel <= kMeanCompletionRelTol && secs < 5.0,
          fmt::format("mean {:.4f} days (target 2.1 +/- 2%), {:.2f} s (limit 5 s)",
                      mean, secs)};
}

// ---------------------------------------------------------------------------

// Component 1 (mean 3 days) shares two crews with four short repairs, so it
// is interrupted at every completion of a short repair and its time redrawn.
// The work it accumulates until repaired should be Exponential(mean 3) like a
// single uninterrupted draw.
Outcome Memorylessness() {
  const auto start = Clock::now();
  CommunityBuilder b;
  b.Add(1, ComponentClass::kSubstation, {3, 3, 3, 3});
  for (int i = 2; i <= 5; ++i) b.Add(i, ComponentClass::kSubstation, {1, 1, 1, 1});
  const Community c = b.Build();
  MdpConfig m;
  m.n_e = 2;

  std::vector<double> preempted, single;
  preempted.reserve(kSamples);
  single.reserve(kSamples);
  Rng rng_a(11), rng_b(12);
  int interruptions = 0;
  for (int s = 0; s < kSamples; ++s) {
    RecoveryState st;
    st.damage.assign(c.size(), DamageState::kMinor);
    double worked = 0.0;
    while (st.damage[0] != DamageState::kNone) {
      RepairAction a{std::vector<bool>(c.size(), false)};
      a.assign[0] = true;
      for (size_t i = 1; i < c.size(); ++i) {
        if (st.damage[i] != DamageState::kNone) {
          a.assign[i] = true;
          break;
        }
      }
      const TransitionOutcome out = Step(st, a, c, m, rng_a);
      worked += out.completion_time;
      if (out.next_state.damage[0] != DamageState::kNone) ++interruptions;
      st = out.next_state;
    }
    preempted.push_back(worked);

    RecoveryState one;
    one.damage.assign(c.size(), DamageState::kNone);
    one.damage[0] = DamageState::kMinor;
    RepairAction a{std::vector<bool>(c.size(), false)};
    a.assign[0] = true;
    single.push_back(Step(one, a, c, m, rng_b).completion_time);
  }
  const double d = testing::KsStatistic(preempted, single);
  const double crit = testing::KsCritical(kSamples, kSamples, kKsLevel);
  const double secs = Seconds(start);
  return {d < crit && interruptions > 0 && secs < 10.0,
          fmt::format("KS D = {:.5f} < {:.5f} at 1% ({} interruptions), "
                      "{:.2f} s (limit 10 s)",
                      d, crit, interruptions, secs)};
}

// ---------------------------------------------------------------------------

Outcome FunctionalityOracle() {
  const auto start = Clock::now();
  Rng rng(31337);
  int mismatches = 0;
  for (int t = 0; t < kRandomDags; ++t) {
    const int n = 2 + static_cast<int>(rng.UniformIndex(kMaxDagNodes - 1));
    const Community c = testing::RandomDag(n, rng, t % 2 == 1);
    const auto damage = testing::RandomDamage(c, rng, 0.3);
    if (FunctionalSet(c, damage) != testing::IterativeRemovalFixedPoint(c, damage)) {
      ++mismatches;
    }
  }
  const double secs = Seconds(start);
  return {mismatches == 0 && secs < 5.0,
          fmt::format("{} DAGs of <= {} nodes, {} mismatches, {:.2f} s "
                      "(limit 5 s)",
                      kRandomDags, kMaxDagNodes, mismatches, secs)};
}

// ---------------------------------------------------------------------------

struct Variant {
  std::string name;
  ObjectiveKind objective;
  Aggregation mode;
};

// Estimates from every rollout decision of the paired runs.
std::vector<QEstimate> g_decision_estimates;
int g_n_mc_max = 0;

Outcome PolicyImprovement() {
  const auto start = Clock::now();
  const Scenario base_scenario = LoadScenario(kScenarioDir + "/mini-gilroy.scenario");
  const std::vector<Variant> variants = {
      {"time-to-threshold mean", ObjectiveKind::kTimeToThreshold, Aggregation::kMean},
      {"benefit-rate mean", ObjectiveKind::kBenefitRate, Aggregation::kMean},
      {"time-to-threshold worst", ObjectiveKind::kTimeToThreshold,
       Aggregation::kWorstCase},
      {"benefit-rate worst", ObjectiveKind::kBenefitRate, Aggregation::kWorstCase},
  };
  const boost::math::students_t t_dist(kPairedEpisodes - 1);
  const double t_crit = boost::math::quantile(t_dist, 1.0 - kTestLevel);
  const int need = static_cast<int>(std::ceil(kNotWorseShare * kPairedEpisodes));
  g_n_mc_max = base_scenario.rollout.n_mc_max;

  bool pass = true;
  std::string detail;
  for (const Variant& v : variants) {
    Scenario s = base_scenario;
    s.mdp.objective = v.objective;
    s.rollout.mode = v.mode;
    const auto base = EvaluatePolicy(PolicyKind::kBase, s, kPairedEpisodes, kPairedSeed);
    const auto roll =
        EvaluatePolicy(PolicyKind::kRollout, s, kPairedEpisodes, kPairedSeed);
    for (const auto& ep : roll.episodes) {
      for (const auto& step : ep.log) {
        g_decision_estimates.insert(g_decision_estimates.end(),
                                    step.estimates.begin(), step.estimates.end());
      }
    }
    const bool higher = HigherIsBetter(s.mdp);
    int not_worse = 0;
    std::vector<double> gain(kPairedEpisodes);
    for (int e = 0; e < kPairedEpisodes; ++e) {
      if (NotWorse(roll.metrics[e], base.metrics[e], higher)) ++not_worse;
      gain[e] = higher ? roll.metrics[e] - base.metrics[e]
                       : base.metrics[e] - roll.metrics[e];
    }
    double mean = 0.0;
    for (const double g : gain) mean += g;
    mean /= kPairedEpisodes;
    double ss = 0.0;
    for (const double g : gain) ss += (g - mean) * (g - mean);
    const double se = std::sqrt(ss / (kPairedEpisodes - 1) / kPairedEpisodes);
    const double t = se > 0.0 ? mean / se : 0.0;
    const bool ok = not_worse >= need && mean > 0.0 && t > t_crit;
    pass = pass && ok;
    detail += fmt::format("\n    {}: not worse {}/{} (need {}), base {:.3f}, "
                          "rollout {:.3f}, t = {:.2f} (crit {:.3f}) {}",
                          v.name, not_worse, kPairedEpisodes, need, base.mean,
                          roll.mean, t, t_crit, ok ? "ok" : "FAIL");
  }
  const double secs = Seconds(start);
  pass = pass && secs < 300.0;
  return {pass, fmt::format("{:.1f} s (limit 300 s){}", secs, detail)};
}

// ---------------------------------------------------------------------------

// Small two-network community: one substation feeding distribution segments,
// one well feeding pipelines, cells on random feeds.
Community RandomInstance(Rng& rng) {
  CommunityBuilder b;
  auto days = [&] {
    RepairDays d;
    double t = 0.0;
    for (double& x : d) x = (t += 0.25 + 3.0 * rng.Uniform());
    return d;
  };
  const int n_seg = 2 + static_cast<int>(rng.UniformIndex(3));
  const int n_pipe = 1 + static_cast<int>(rng.UniformIndex(3));
  b.Add(1, ComponentClass::kSubstation, days());
  for (int i = 0; i < n_seg; ++i) {
    b.Add(2 + i, ComponentClass::kDistributionSegment, days()).Edge(1, 2 + i);
  }
  b.Add(20, ComponentClass::kWell, days());
  for (int i = 0; i < n_pipe; ++i) {
    b.Add(21 + i, ComponentClass::kPipeline, days()).Edge(20, 21 + i);
  }
  const int n_cells = 2 + static_cast<int>(rng.UniformIndex(4));
  for (int k = 0; k < n_cells; ++k) {
    b.Cell(1 + k, 100 + static_cast<int64_t>(rng.UniformIndex(900)),
           {static_cast<double>(k), 0.0},
           2 + static_cast<int>(rng.UniformIndex(n_seg)),
           21 + static_cast<int>(rng.UniformIndex(n_pipe)));
  }
  b.Shop(1, 50, {0.5, 1.0}, 2, 21);
  return b.Build();
}

Outcome OracleNearOptimality() {
  const auto start = Clock::now();
  Rng rng(4242);
  int done = 0, small = 0, small_exact = 0, within = 0;
  double worst_gap = 0.0;
  while (done < kOracleInstances) {
    const Community c = RandomInstance(rng);
    MdpConfig m;
    m.repair_model = RepairModel::kRemainingWork;
    m.work_distribution = WorkDistribution::kFixed;
    m.n_e = 1 + static_cast<int>(rng.UniformIndex(2));
    m.n_w = 1 + static_cast<int>(rng.UniformIndex(2));
    m.objective = done % 2 ? ObjectiveKind::kBenefitRate
                           : ObjectiveKind::kTimeToThreshold;
    m.alpha = 0.5 + 0.4 * rng.Uniform();

    std::vector<int> physical(c.size());
    for (size_t i = 0; i < c.size(); ++i) physical[i] = static_cast<int>(i);
    for (size_t i = physical.size() - 1; i > 0; --i) {
      std::swap(physical[i], physical[rng.UniformIndex(i + 1)]);
    }
    const int k = 1 + static_cast<int>(rng.UniformIndex(kOracleMaxDamagedHere));
    std::vector<DamageState> damage(c.size(), DamageState::kNone);
    for (int j = 0; j < std::min<int>(k, physical.size()); ++j) {
      damage[physical[j]] = static_cast<DamageState>(1 + rng.UniformIndex(4));
    }
    Rng unused(0);
    const RecoveryState st = MakeInitialState(c, damage, m, unused);
    if (IsTerminal(st, c, m)) continue;

    const OracleResult o = ExhaustiveOracle(st, c, m);
    const RolloutPlanner planner(c, m, {}, {});
    const EpisodeResult ep = RunEpisode(PolicyKind::kRollout, damage, planner, done);
    const double shortfall = o.value - ep.discounted_return;
    const double gap = std::max(0.0, shortfall) / std::max(1e-12, std::abs(o.value));
    worst_gap = std::max(worst_gap, gap);
    if (gap <= kOracleGap) ++within;
    if (st.DamagedCount() <= 2) {
      ++small;
      if (std::abs(shortfall) <= 1e-9 * (1.0 + std::abs(o.value))) ++small_exact;
    }
    ++done;
  }
  const double secs = Seconds(start);
  return {within == done && small_exact == small && secs < 120.0,
          fmt::format("{}/{} within 5% (worst gap {:.4f}), {}/{} exact with "
                      "<= 2 damaged, {:.2f} s (limit 120 s)",
                      within, done, worst_gap, small_exact, small, secs)};
}

// ---------------------------------------------------------------------------

Outcome AdaptiveSampling() {
  int violations = 0;
  for (const QEstimate& q : g_decision_estimates) {
    if (!(q.std_error < kSeThreshold || q.n_trajectories == g_n_mc_max)) {
      ++violations;
    }
  }
  const bool pass = !g_decision_estimates.empty() && violations == 0;
  return {pass, fmt::format("{} estimates from the paired runs, {} violations",
                            g_decision_estimates.size(), violations)};
}

// ---------------------------------------------------------------------------

Outcome PartialRestoration() {
  const Scenario s = LoadScenario(kFixtureDir + "/partial_restoration.scenario");
  const RolloutPlanner planner(s.community, s.mdp, s.base_policy, s.rollout);
  bool pass = s.mdp.objective == ObjectiveKind::kTimeToThreshold;
  std::string detail;
  for (const PolicyKind p : {PolicyKind::kBase, PolicyKind::kRollout}) {
    for (int e = 0; e < 3; ++e) {
      const EpisodeResult ep =
          RunEpisode(p, EpisodeDamage(s, s.seed, e), planner, EpisodeSeed(s.seed, e));
      const double coverage = CoverageFraction(ep.final_state, s.community);
      const int left = ep.final_state.DamagedCount();
      const bool ok = IsTerminal(ep.final_state, s.community, s.mdp) &&
                      coverage >= s.mdp.alpha && left >= 1;
      pass = pass && ok;
      if (e == 0) {
        detail += fmt::format("{}{}: coverage {:.3f} >= {:.2f} with {} damaged",
                              detail.empty() ? "" : "; ", PolicyName(p),
                              coverage, s.mdp.alpha, left);
      }
    }
  }
  return {pass, detail};
}

// ---------------------------------------------------------------------------

std::string ReadAll(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome Determinism() {
  const Scenario s = LoadScenario(kScenarioDir + "/mini-gilroy.scenario");
  const fs::path root = fs::temp_directory_path() / "recovery_acceptance_determinism";
  fs::remove_all(root);
  CmdCompare(s, kPairedEpisodes, kPairedSeed, root / "a", true);
  CmdCompare(s, kPairedEpisodes, kPairedSeed, root / "b", true);
  int files = 0, differ = 0;
  for (const auto& entry : fs::recursive_directory_iterator(root / "a")) {
    if (!entry.is_regular_file()) continue;
    const fs::path twin = root / "b" / fs::relative(entry.path(), root / "a");
    ++files;
    if (!fs::exists(twin) || ReadAll(entry.path()) != ReadAll(twin)) ++differ;
  }
  int files_b = 0;
  for (const auto& entry : fs::recursive_directory_iterator(root / "b")) {
    if (entry.is_regular_file()) ++files_b;
  }
  fs::remove_all(root);
  return {files > 0 && differ == 0 && files == files_b,
          fmt::format("{} files compared, {} differ", files, differ)};
}

// ---------------------------------------------------------------------------

Outcome FragilitySanity() {
  const Scenario s = LoadScenario(kScenarioDir + "/mini-gilroy.scenario");
  double worst_median = 0.0, worst_sum = 0.0;
  int curve_sets = 0;
  for (const auto& h : s.hazard) {
    const auto* f = std::get_if<ComponentFragility>(&h);
    if (f == nullptr) continue;
    ++curve_sets;
    for (const FragilityCurve& curve : f->curves) {
      worst_median = std::max(
          worst_median, std::abs(ExceedanceProb(curve.median_im, curve) - 0.5));
    }
    // Log-spaced sweep from a tenth of the Minor median to the Complete one.
    const double lo = f->curves.front().median_im / 10.0;
    const double hi = f->curves.back().median_im;
    for (int i = 0; i < kImSweepPoints; ++i) {
      const double im = lo * std::pow(hi / lo, i / (kImSweepPoints - 1.0));
      double sum = 0.0;
      for (const double p : ComputeDamagePmf({im, f->curves})) sum += p;
      worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    }
  }
  return {curve_sets > 0 && worst_median <= kFragilityTol && worst_sum <= kFragilityTol,
          fmt::format("{} curve sets, max |P(median) - 0.5| = {:.1e}, "
                      "max |sum - 1| = {:.1e} over {} IMs",
                      curve_sets, worst_median, worst_sum, kImSweepPoints)};
}

// ---------------------------------------------------------------------------

struct Criterion {
  int number;
  std::string name;
  std::function<Outcome()> run;
};

int RunAll() {
  const std::vector<Criterion> criteria = {
      {1, "admissible action count", ActionSetSize},
      {2, "min of exponential repair times", MinOfExponentials},
      {3, "memorylessness under preemption", Memorylessness},
      {4, "functional set vs iterative removal", FunctionalityOracle},
      {5, "rollout improves on the base policy", PolicyImprovement},
      {6, "rollout near the exhaustive optimum", OracleNearOptimality},
      {7, "adaptive sampling stopping rule", AdaptiveSampling},
      {8, "time objective stops before full repair", PartialRestoration},
      {9, "compare output is deterministic", Determinism},
      {10, "fragility sanity", FragilitySanity},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    if (!o.pass) ++failed;
    fmt::print("[{}] {:2d} {}: {}\n", o.pass ? "PASS" : "FAIL", c.number, c.name,
               o.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed,
             criteria.size());
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace recovery

int main() { return recovery::RunAll(); }
