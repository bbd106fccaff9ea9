#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "sta/errors.hpp"
#include "sta/harness.hpp"
#include "sta/io.hpp"
#include "sta/rng.hpp"

using namespace sta;

TEST_CASE("run_episode is a pure function of config, policy and seed") {
  const EnvConfig cfg = preset_config("3A-6T-5x3");
  const EpisodeLog a = run_episode(cfg, "random_valid", 31);
  const EpisodeLog b = run_episode(cfg, "random_valid", 31);
  CHECK(episode_log_to_jsonl(a) == episode_log_to_jsonl(b));

  const EpisodeLog c = run_episode(cfg, "random_valid", 32);
  CHECK(episode_log_to_jsonl(a) != episode_log_to_jsonl(c));
}

TEST_CASE("episodes terminate and carry consistent bookkeeping") {
  const EnvConfig cfg = preset_config("3A-12T-10x6");
  const EpisodeLog log = run_episode(cfg, "random_valid", 5);
  CHECK(log.policy == "random_valid");
  CHECK(log.seed == 5);
  CHECK(log.final.t == static_cast<long long>(log.steps.size()));
  CHECK(log.final.reason != TerminalReason::kNone);

  double accumulated = 0.0;
  long long completions = 0;
  for (const StepRecord& step : log.steps) {
    accumulated += step.team_reward;
    completions += step.completions_count;
  }
  CHECK(accumulated == log.episode_return);
  CHECK(completions == log.final.completed);

  // step t indices count up from zero without gaps
  for (std::size_t i = 0; i < log.steps.size(); ++i) {
    CHECK(log.steps[i].t == static_cast<long long>(i));
  }
}

TEST_CASE("replaying the logged actions reproduces the episode bit for bit") {
  for (const char* policy : {"random_valid", "greedy_nearest"}) {
    const EnvConfig cfg = preset_config("5A-12T-10x6");
    const EpisodeLog original = run_episode(cfg, policy, 13);

    std::vector<std::vector<int>> actions;
    for (const StepRecord& step : original.steps) {
      actions.push_back(step.submitted_actions);
    }
    const EpisodeLog replayed = replay(cfg, 13, actions, policy);
    CHECK(episode_log_to_jsonl(original) == episode_log_to_jsonl(replayed));
    CHECK(replayed.episode_return == original.episode_return);
    CHECK(test::metrics_identical(episode_metrics(original, cfg),
                                  episode_metrics(replayed, cfg)));
  }
}

TEST_CASE("evaluate aggregates per seed, then across seeds") {
  const EnvConfig cfg = preset_config("3A-6T-5x3");
  const std::vector<std::uint64_t> seeds = {1, 2, 3};
  const AggregateReport report = evaluate(cfg, "random_valid", seeds, 4);

  CHECK(report.policy == "random_valid");
  CHECK(report.seeds == seeds);
  CHECK(report.episodes_per_seed == 4);
  for (const auto& name : metric_names()) {
    REQUIRE(report.metrics.count(name) == 1);
    const MetricAggregate& agg = report.metrics.at(name);
    REQUIRE(agg.per_seed.size() == seeds.size());
    // the cross-seed summary matches a direct pass over the per-seed means
    const Ci95 direct = ci95(agg.per_seed);
    CHECK(agg.mean == direct.mean);
    CHECK(agg.ci95_halfwidth == direct.halfwidth);
  }

  // per-seed means are episode averages: recompute seed 2's throughput
  const auto& throughput = report.metrics.at("throughput");
  double sum = 0.0;
  for (int e = 0; e < 4; ++e) {
    const EpisodeLog log = run_episode(
        cfg, "random_valid", episode_seed(2, 1, static_cast<std::uint64_t>(e)));
    sum += episode_metrics(log, cfg).throughput;
  }
  CHECK(throughput.per_seed[1] == sum / 4);
}

TEST_CASE("appending a seed never disturbs the earlier seeds' numbers") {
  const EnvConfig cfg = preset_config("3A-6T-5x3");
  const AggregateReport two =
      evaluate(cfg, "random_valid", std::vector<std::uint64_t>{4, 5}, 3);
  const AggregateReport three =
      evaluate(cfg, "random_valid", std::vector<std::uint64_t>{4, 5, 6}, 3);
  for (const auto& name : metric_names()) {
    const auto& before = two.metrics.at(name).per_seed;
    const auto& after = three.metrics.at(name).per_seed;
    CHECK(before[0] == after[0]);
    CHECK(before[1] == after[1]);
  }
}

TEST_CASE("evaluate validates its arguments") {
  const EnvConfig cfg = preset_config("3A-6T-5x3");
  CHECK_THROWS_AS(
      (void)evaluate(cfg, "random_valid", std::vector<std::uint64_t>{}, 3),
      Error);
  CHECK_THROWS_AS(
      (void)evaluate(cfg, "random_valid", std::vector<std::uint64_t>{1}, 0),
      Error);
  CHECK_THROWS_AS(
      (void)evaluate(cfg, "no_such_policy", std::vector<std::uint64_t>{1}, 1),
      Error);
}

TEST_CASE("scaling_comparison tests one metric between two evaluations") {
  const std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8};
  const EnvConfig cfg = preset_config("5A-12T-10x6");
  const AggregateReport greedy = evaluate(cfg, "greedy_nearest", seeds, 2);
  const AggregateReport coord = evaluate(cfg, "coordinated_greedy", seeds, 2);

  const ComparisonRow row =
      scaling_comparison(greedy, coord, "conflict_rate", 0.05);
  CHECK(row.metric == "conflict_rate");
  CHECK(row.mean_a > row.mean_b);  // coordination removes the conflicts
  CHECK(row.mean_b == 0.0);
  CHECK_FALSE(row.no_change);
  CHECK(row.welch.direction == -1);

  // identical degenerate samples: reported as no change, not an error
  const ComparisonRow same =
      scaling_comparison(coord, coord, "total_conflicts", 0.05);
  CHECK(same.no_change);
  CHECK_FALSE(same.welch.significant);
  CHECK(same.welch.p == 1.0);
  CHECK(same.welch.direction == 0);

  CHECK_THROWS_AS(
      (void)scaling_comparison(greedy, coord, "made_up_metric", 0.05), Error);

  const AggregateReport other_protocol =
      evaluate(cfg, "coordinated_greedy", seeds, 3);
  CHECK_THROWS_AS(
      (void)scaling_comparison(greedy, other_protocol, "conflict_rate", 0.05),
      Error);
}

TEST_CASE("the step-rate benchmark runs at least the requested steps") {
  const EnvConfig cfg = preset_config("3A-6T-5x3");
  const BenchResult result = benchmark_steps(cfg, "random_valid", 2000, 0);
  CHECK(result.steps >= 2000);
  CHECK(result.seconds > 0.0);
  CHECK(result.steps_per_second > 0.0);
}
