#include "sta/harness.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "sta/actionspace.hpp"
#include "sta/errors.hpp"
#include "sta/rng.hpp"

namespace sta {

namespace {

// pre-step fields (t, decision_active) must be captured before stepping
StepRecord make_record(long long t, int decision_active,
                       std::span<const int> actions,
                       const StepOutcome& outcome) {
  StepRecord rec;
  rec.t = t;
  rec.decision_active_count = decision_active;
  rec.submitted_actions.assign(actions.begin(), actions.end());
  for (int action : actions) {
    if (is_select(action)) rec.selections.push_back(selected_task(action));
  }
  std::sort(rec.selections.begin(), rec.selections.end());
  rec.final_actions = outcome.final_actions;
  rec.conflicts = outcome.conflicts;
  rec.forced_idle_count = static_cast<int>(outcome.forced_idle.size());
  rec.completions_count = static_cast<int>(outcome.completions.size());
  rec.team_reward = outcome.team_reward;
  return rec;
}

void finish_log(EpisodeLog& log, const World& world) {
  const auto [terminal, reason] = is_terminal(world.state(), world.config());
  if (!terminal) throw Error("episode ended in a non-terminal state");
  log.final.reason = reason;
  log.final.completed = world.state().completed_count;
  log.final.t = world.state().t;
}

}  // namespace

EpisodeLog run_episode(const EnvConfig& cfg, const std::string& policy_name,
                       std::uint64_t seed) {
  World world(cfg, seed);
  Policy policy(policy_name, derive_seed(seed, kPolicyStream));

  EpisodeLog log;
  log.config = world.config();
  log.policy = policy_name;
  log.seed = seed;

  std::vector<int> actions;
  StepOutcome outcome;
  while (!is_terminal(world.state(), world.config()).first) {
    policy.joint_action_into(world.state(), actions);
    const long long t = world.state().t;
    const int decision_active = selecting_agent_count(world.state());
    world.step_into(actions, outcome);
    log.steps.push_back(make_record(t, decision_active, actions, outcome));
    log.episode_return += outcome.team_reward;
  }
  finish_log(log, world);
  return log;
}

EpisodeLog replay(const EnvConfig& cfg, std::uint64_t seed,
                  const std::vector<std::vector<int>>& actions,
                  const std::string& policy_name) {
  World world(cfg, seed);
  EpisodeLog log;
  log.config = world.config();
  log.policy = policy_name;
  log.seed = seed;

  StepOutcome outcome;
  for (const auto& joint : actions) {
    const long long t = world.state().t;
    const int decision_active = selecting_agent_count(world.state());
    world.step_into(joint, outcome);
    log.steps.push_back(make_record(t, decision_active, joint, outcome));
    log.episode_return += outcome.team_reward;
  }
  finish_log(log, world);
  return log;
}

AggregateReport evaluate(const EnvConfig& cfg, const std::string& policy,
                         std::span<const std::uint64_t> seeds,
                         int episodes_per_seed) {
  if (seeds.empty()) throw Error("evaluate: need at least one seed");
  if (episodes_per_seed < 1) {
    throw Error("evaluate: episodes_per_seed must be at least 1");
  }
  validate_config(cfg);

  AggregateReport report;
  report.config = cfg;
  report.policy = policy;
  report.seeds.assign(seeds.begin(), seeds.end());
  report.episodes_per_seed = episodes_per_seed;

  const auto& names = metric_names();
  std::vector<std::vector<double>> per_seed(
      names.size(), std::vector<double>(seeds.size(), 0.0));

  for (std::size_t si = 0; si < seeds.size(); ++si) {
    std::vector<double> sums(names.size(), 0.0);
    for (int e = 0; e < episodes_per_seed; ++e) {
      const std::uint64_t sub =
          episode_seed(seeds[si], static_cast<std::uint64_t>(si),
                       static_cast<std::uint64_t>(e));
      const EpisodeLog log = run_episode(cfg, policy, sub);
      const MetricsRecord rec = episode_metrics(log, cfg);
      for (std::size_t k = 0; k < names.size(); ++k) {
        sums[k] += metric_value(rec, names[k]);
      }
    }
    for (std::size_t k = 0; k < names.size(); ++k) {
      per_seed[k][si] = sums[k] / episodes_per_seed;
    }
  }

  for (std::size_t k = 0; k < names.size(); ++k) {
    const Ci95 interval = ci95(per_seed[k]);
    MetricAggregate agg;
    agg.mean = interval.mean;
    agg.ci95_halfwidth = interval.halfwidth;
    agg.per_seed = per_seed[k];
    report.metrics.emplace(names[k], std::move(agg));
  }
  return report;
}

ComparisonRow scaling_comparison(const AggregateReport& a,
                                 const AggregateReport& b,
                                 const std::string& metric, double alpha) {
  const auto ita = a.metrics.find(metric);
  const auto itb = b.metrics.find(metric);
  if (ita == a.metrics.end() || itb == b.metrics.end()) {
    throw Error("scaling_comparison: metric '" + metric +
                "' missing from a report");
  }
  if (a.episodes_per_seed != b.episodes_per_seed) {
    throw Error("scaling_comparison: reports use different episode counts");
  }

  ComparisonRow row;
  row.metric = metric;
  row.mean_a = ita->second.mean;
  row.mean_b = itb->second.mean;

  const auto& pa = ita->second.per_seed;
  const auto& pb = itb->second.per_seed;
  const bool constant_a =
      std::all_of(pa.begin(), pa.end(), [&](double v) { return v == pa[0]; });
  const bool constant_b =
      std::all_of(pb.begin(), pb.end(), [&](double v) { return v == pb[0]; });
  if (constant_a && constant_b && pa[0] == pb[0]) {
    // identical degenerate samples: no change, nothing to test
    row.no_change = true;
    row.welch.direction = 0;
    row.welch.p = 1.0;
    row.welch.significant = false;
    return row;
  }
  row.welch = welch_t(pa, pb, alpha);
  return row;
}

BenchResult benchmark_steps(const EnvConfig& cfg, const std::string& policy_name,
                            long long min_steps, std::uint64_t seed) {
  validate_config(cfg);
  if (min_steps < 1) throw Error("benchmark_steps: min_steps must be positive");

  World world(cfg, seed);
  Policy policy(policy_name, derive_seed(seed, kPolicyStream));
  std::vector<int> actions;
  StepOutcome outcome;

  BenchResult result;
  std::uint64_t episode = 0;
  const auto start = std::chrono::steady_clock::now();
  while (result.steps < min_steps) {
    if (is_terminal(world.state(), world.config()).first) {
      world.reset(episode_seed(seed, 0, ++episode));
    }
    policy.joint_action_into(world.state(), actions);
    world.step_into(actions, outcome);
    ++result.steps;
  }
  const auto stop = std::chrono::steady_clock::now();
  result.seconds = std::chrono::duration<double>(stop - start).count();
  result.steps_per_second =
      result.seconds > 0.0 ? static_cast<double>(result.steps) / result.seconds
                           : 0.0;
  return result;
}

}  // namespace sta
