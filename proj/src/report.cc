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

#include "recovery/report.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "fmt/core.h"
#include "fmt/format.h"
#include "recovery/error.h"

namespace recovery {

namespace fs = std::filesystem;

namespace {

void WriteFile(const fs::path& path, const std::string& content) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw RecoveryError(ErrorCode::kIoError,
                        fmt::format("cannot write '{}'", path.string()));
  }
  out << content;
  if (!out) {
    throw RecoveryError(ErrorCode::kIoError,
                        fmt::format("write to '{}' failed", path.string()));
  }
}

std::string Ids(const Community& community, const std::vector<int>& indices) {
  std::string out;
  for (const int i : indices) {
    if (!out.empty()) out += ' ';
    out += std::to_string(community.component(i).id);
  }
  return out;
}

std::string_view ObjectiveName(ObjectiveKind k) {
  return k == ObjectiveKind::kTimeToThreshold ? "time_to_threshold"
                                              : "benefit_rate";
}

std::string_view MetricName(const MdpConfig& c) {
  return c.objective == ObjectiveKind::kTimeToThreshold ? "time_to_alpha_days"
                                                        : "persons_per_day";
}

std::string ConfigEcho(const Scenario& s, uint64_t seed, int episodes) {
  std::string out;
  out += fmt::format("scenario: {}\n", s.name);
  out += fmt::format("seed: {}\n", seed);
  out += fmt::format("episodes: {}\n", episodes);
  out += fmt::format("objective: {}\n", ObjectiveName(s.mdp.objective));
  out += fmt::format("alpha: {:.6f}\n", s.mdp.alpha);
  out += fmt::format("gamma: {:.6f}\n", s.mdp.gamma);
  out += fmt::format("resource_units: epn={} wn={}\n", s.mdp.n_e, s.mdp.n_w);
  out += fmt::format("repair_model: {}\n",
                     s.mdp.repair_model == RepairModel::kExponential
                         ? "exponential"
                         : "remaining_work");
  out += fmt::format(
      "rollout: mode={} horizon={} n_mc=[{},{}] se_threshold={:.6f} "
      "action_cap={} improvement_margin={:.6f}\n",
      s.rollout.mode == Aggregation::kMean ? "mean" : "worst",
      s.rollout.horizon ? std::to_string(*s.rollout.horizon) : "auto",
      s.rollout.n_mc_min, s.rollout.n_mc_max, s.rollout.se_threshold,
      s.rollout.action_cap, s.rollout.improvement_margin);
  return out;
}

void WritePolicyOutputs(const Scenario& scenario, const PolicyEvaluation& eval,
                        const fs::path& dir, bool svg) {
  for (size_t e = 0; e < eval.episodes.size(); ++e) {
    WriteFile(dir / fmt::format("curve_ep{:03d}.csv", e),
              CurveCsv(eval.episodes[e].curve));
  }
  WriteFile(dir / "trace.csv", TraceCsv(scenario.community, eval.episodes));
  if (svg && !eval.episodes.empty()) {
    WriteFile(dir / "curve_ep000.svg",
              CurveSvg({{std::string(PolicyName(eval.policy)),
                         eval.episodes.front().curve}},
                       scenario.community.total_population()));
  }
}

std::string PolicyLine(const PolicyEvaluation& eval) {
  return fmt::format("{}: mean={:.6f} stderr={:.6f}\n", PolicyName(eval.policy),
                     eval.mean, eval.std_error);
}

struct RetailerStat {
  double mean = 0.0;
  int restored = 0;
};

RetailerStat RetailerTime(const PolicyEvaluation& eval, size_t j) {
  RetailerStat s;
  double sum = 0.0;
  for (const auto& ep : eval.episodes) {
    const double t = ep.retailer_recovery_time[j];
    if (std::isnan(t)) continue;
    sum += t;
    ++s.restored;
  }
  s.mean = s.restored > 0 ? sum / s.restored : std::nan("");
  return s;
}

std::string FormatDays(double t) {
  return std::isnan(t) ? std::string("NA") : fmt::format("{:.6f}", t);
}

}  // namespace

std::string_view PolicyName(PolicyKind policy) {
  return policy == PolicyKind::kBase ? "base" : "rollout";
}

std::string CurveCsv(const RestorationCurve& curve) {
  std::string out = "time_days,benefitted_persons,epn_frac,wn_frac\n";
  for (const CurvePoint& p : curve) {
    out += fmt::format("{:.6f},{:.6f},{:.6f},{:.6f}\n", p.time, p.benefitted,
                       p.epn_fraction, p.wn_fraction);
  }
  return out;
}

std::string TraceCsv(const Community& community,
                     const std::vector<EpisodeResult>& episodes) {
  std::string out =
      "episode,decision,start_days,assigned_ids,repaired_ids,completion_days,"
      "reward,coverage,admissible,candidates,max_q_stderr,min_q_trajectories\n";
  for (size_t e = 0; e < episodes.size(); ++e) {
    for (const StepRecord& r : episodes[e].log) {
      double max_se = 0.0;
      int min_n = 0;
      for (const QEstimate& q : r.estimates) {
        max_se = std::max(max_se, q.std_error);
        min_n = min_n == 0 ? q.n_trajectories : std::min(min_n, q.n_trajectories);
      }
      out += fmt::format("{},{},{:.6f},{},{},{:.6f},{:.6f},{:.6f},{},{},{:.6f},{}\n",
                         e, r.decision, r.start_time,
                         Ids(community, r.assigned), Ids(community, r.repaired),
                         r.completion_time, r.reward, r.coverage,
                         r.admissible_count, r.estimates.size(), max_se, min_n);
    }
  }
  return out;
}

std::string CurveSvg(
    const std::vector<std::pair<std::string, RestorationCurve>>& series,
    double population) {
  constexpr double kWidth = 640, kHeight = 360, kMargin = 48;
  constexpr std::array<std::string_view, 4> kColors = {"#1f77b4", "#d62728",
                                                       "#2ca02c", "#9467bd"};
  double t_max = 0.0;
  for (const auto& [_, curve] : series) {
    if (!curve.empty()) t_max = std::max(t_max, curve.back().time);
  }
  if (!(t_max > 0.0)) t_max = 1.0;
  const double y_max = population > 0.0 ? population : 1.0;
  auto sx = [&](double t) { return kMargin + t / t_max * (kWidth - 2 * kMargin); };
  auto sy = [&](double b) {
    return kHeight - kMargin - b / y_max * (kHeight - 2 * kMargin);
  };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" "
      "height=\"{:.0f}\">\n",
      kWidth, kHeight);
  out += fmt::format(
      "<rect x=\"{0:.0f}\" y=\"{0:.0f}\" width=\"{1:.0f}\" height=\"{2:.0f}\" "
      "fill=\"none\" stroke=\"#888\"/>\n",
      kMargin, kWidth - 2 * kMargin, kHeight - 2 * kMargin);
  out += fmt::format(
      "<text x=\"{:.0f}\" y=\"{:.0f}\" font-size=\"12\">time (days), 0 to "
      "{:.2f}</text>\n",
      kMargin, kHeight - 12, t_max);
  out += fmt::format(
      "<text x=\"4\" y=\"{:.0f}\" font-size=\"12\">benefitted persons, max "
      "{:.0f}</text>\n",
      kMargin - 12, y_max);
  for (size_t s = 0; s < series.size(); ++s) {
    const auto& [label, curve] = series[s];
    std::string points;
    for (size_t k = 0; k < curve.size(); ++k) {
      if (k > 0) {
        points += fmt::format("{:.2f},{:.2f} ", sx(curve[k].time),
                              sy(curve[k - 1].benefitted));
      }
      points += fmt::format("{:.2f},{:.2f} ", sx(curve[k].time),
                            sy(curve[k].benefitted));
    }
    const auto color = kColors[s % kColors.size()];
    out += fmt::format(
        "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" "
        "points=\"{}\"/>\n",
        color, points);
    out += fmt::format(
        "<text x=\"{:.0f}\" y=\"{:.0f}\" font-size=\"12\" fill=\"{}\">{}</text>\n",
        kWidth - kMargin - 80, kMargin + 16 + 16 * s, color, label);
  }
  out += "</svg>\n";
  return out;
}

std::string DamageCsv(const Community& community,
                      const std::vector<DamageState>& damage) {
  std::string out = "component_id,class,network,damage\n";
  for (size_t i = 0; i < community.size(); ++i) {
    const Component& c = community.component(static_cast<int>(i));
    out += fmt::format("{},{},{},{}\n", c.id,
                       c.is_junction() ? "junction" : ComponentClassName(*c.cls),
                       NetworkName(c.network), DamageStateName(damage[i]));
  }
  return out;
}

PlanReport CmdPlan(const Scenario& scenario, PolicyKind policy, int episodes,
                   uint64_t seed, const fs::path& out_dir, bool svg) {
  PlanReport report;
  report.evaluation = EvaluatePolicy(policy, scenario, episodes, seed);
  const fs::path dir = out_dir / std::string(PolicyName(policy));
  WritePolicyOutputs(scenario, report.evaluation, dir, svg);
  report.summary = ConfigEcho(scenario, seed, episodes);
  report.summary += fmt::format("metric: {}\n", MetricName(scenario.mdp));
  report.summary += PolicyLine(report.evaluation);
  WriteFile(dir / "summary.txt", report.summary);
  return report;
}

CompareReport CmdCompare(const Scenario& scenario, int episodes, uint64_t seed,
                         const fs::path& out_dir, bool svg) {
  CompareReport report;
  report.base = EvaluatePolicy(PolicyKind::kBase, scenario, episodes, seed);
  report.rollout = EvaluatePolicy(PolicyKind::kRollout, scenario, episodes, seed);
  WritePolicyOutputs(scenario, report.base, out_dir / "base", svg);
  WritePolicyOutputs(scenario, report.rollout, out_dir / "rollout", svg);

  const bool higher = HigherIsBetter(scenario.mdp);
  std::string pairs = "episode,base_metric,rollout_metric,rollout_not_worse\n";
  for (int e = 0; e < episodes; ++e) {
    const double b = report.base.metrics[e];
    const double r = report.rollout.metrics[e];
    const bool not_worse = NotWorse(r, b, higher);
    if (not_worse) ++report.rollout_not_worse;
    pairs += fmt::format("{},{:.6f},{:.6f},{}\n", e, b, r, not_worse ? 1 : 0);
  }
  WriteFile(out_dir / "pairs.csv", pairs);
  const double b = report.base.mean;
  const double r = report.rollout.mean;
  if (b != 0.0) {
    report.improvement_pct = (higher ? r - b : b - r) / std::abs(b) * 100.0;
  }

  std::string retailers =
      "retailer_id,name,base_mean_days,base_restored,rollout_mean_days,"
      "rollout_restored\n";
  const auto& list = scenario.community.retailers();
  for (size_t j = 0; j < list.size(); ++j) {
    const RetailerStat sb = RetailerTime(report.base, j);
    const RetailerStat sr = RetailerTime(report.rollout, j);
    retailers += fmt::format("{},{},{},{},{},{}\n", list[j].id, list[j].name,
                             FormatDays(sb.mean), sb.restored,
                             FormatDays(sr.mean), sr.restored);
  }
  WriteFile(out_dir / "retailers.csv", retailers);
  if (svg && episodes > 0) {
    WriteFile(out_dir / "compare_ep000.svg",
              CurveSvg({{"base", report.base.episodes.front().curve},
                        {"rollout", report.rollout.episodes.front().curve}},
                       scenario.community.total_population()));
  }

  report.summary = ConfigEcho(scenario, seed, episodes);
  report.summary += fmt::format("metric: {}\n", MetricName(scenario.mdp));
  report.summary += PolicyLine(report.base);
  report.summary += PolicyLine(report.rollout);
  report.summary += fmt::format("improvement_pct: {:.4f}\n", report.improvement_pct);
  report.summary += fmt::format("rollout_not_worse_pairs: {}/{}\n",
                                report.rollout_not_worse, episodes);
  WriteFile(out_dir / "compare_summary.txt", report.summary);
  return report;
}

OracleCheckReport CmdOracleCheck(const Scenario& scenario, uint64_t seed,
                                 double tolerance) {
  MdpConfig mdp = scenario.mdp;
  mdp.repair_model = RepairModel::kRemainingWork;
  mdp.work_distribution = WorkDistribution::kFixed;
  const std::vector<DamageState> damage = EpisodeDamage(scenario, seed, 0);
  Rng unused(0);
  const RecoveryState initial =
      MakeInitialState(scenario.community, damage, mdp, unused);

  OracleCheckReport report;
  if (initial.DamagedCount() > kOracleMaxDamaged) {
    throw RecoveryError(
        ErrorCode::kInstanceTooLarge,
        fmt::format("{} damaged components; the oracle handles at most {}",
                    initial.DamagedCount(), kOracleMaxDamaged));
  }
  if (IsTerminal(initial, scenario.community, mdp)) {
    report.pass = true;
    report.summary = "initial state is already terminal; gap 0\n";
    return report;
  }
  const OracleResult oracle = ExhaustiveOracle(initial, scenario.community, mdp);
  const RolloutPlanner planner(scenario.community, mdp, scenario.base_policy,
                               scenario.rollout);
  const EpisodeResult episode =
      RunEpisode(PolicyKind::kRollout, damage, planner, EpisodeSeed(seed, 0));
  report.oracle_value = oracle.value;
  report.rollout_value = episode.discounted_return;
  const double shortfall = oracle.value - episode.discounted_return;
  report.gap = oracle.value == 0.0 ? std::abs(shortfall)
                                   : std::max(0.0, shortfall) / std::abs(oracle.value);
  report.pass = report.gap <= tolerance;
  report.summary = fmt::format(
      "damaged: {}\nschedules: {}\noracle_value: {:.6f}\nrollout_value: "
      "{:.6f}\ngap: {:.6f}\ntolerance: {:.6f}\nresult: {}\n",
      initial.DamagedCount(), oracle.schedules, report.oracle_value,
      report.rollout_value, report.gap, tolerance,
      report.pass ? "PASS" : "FAIL");
  return report;
}

}  // namespace recovery
