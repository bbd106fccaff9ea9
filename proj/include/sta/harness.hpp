#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sta/diagnostics.hpp"
#include "sta/policies.hpp"
#include "sta/stats.hpp"
#include "sta/world.hpp"

namespace sta {

struct FinalSummary {
  TerminalReason reason = TerminalReason::kNone;
  int completed = 0;
  long long t = 0;
};

struct EpisodeLog {
  EnvConfig config;
  std::string policy;
  std::uint64_t seed = 0;
  std::vector<StepRecord> steps;
  FinalSummary final;
  double episode_return = 0.0;  // team rewards accumulated in step order
};

// Runs one episode to termination. The environment consumes
// derive_seed(seed, kPlacementStream) and the policy rng
// derive_seed(seed, kPolicyStream).
EpisodeLog run_episode(const EnvConfig& cfg, const std::string& policy,
                       std::uint64_t seed);

// Feeds previously logged joint actions through fresh dynamics; reproduces
// the original log bit-exactly.
EpisodeLog replay(const EnvConfig& cfg, std::uint64_t seed,
                  const std::vector<std::vector<int>>& actions,
                  const std::string& policy_name);

struct MetricAggregate {
  double mean = 0.0;
  double ci95_halfwidth = 0.0;
  std::vector<double> per_seed;  // per-seed episode means, seed-list order
};

struct AggregateReport {
  EnvConfig config;
  std::string policy;
  std::vector<std::uint64_t> seeds;
  int episodes_per_seed = 0;
  std::map<std::string, MetricAggregate> metrics;  // keyed by metric_names()
};

// For each root seed runs episodes_per_seed episodes (sub-seeds via
// episode_seed), averages each metric within the seed, then reports the
// cross-seed mean and 95% confidence halfwidth. Episodes run and aggregate
// in (seed, episode) order.
AggregateReport evaluate(const EnvConfig& cfg, const std::string& policy,
                         std::span<const std::uint64_t> seeds,
                         int episodes_per_seed);

struct ComparisonRow {
  std::string metric;
  double mean_a = 0.0;
  double mean_b = 0.0;
  WelchResult welch;
  bool no_change = false;  // identical degenerate samples; reported untested
};

// Direction and significance of the change in one metric between two
// evaluations, via welch_t on the per-seed values.
ComparisonRow scaling_comparison(const AggregateReport& a,
                                 const AggregateReport& b,
                                 const std::string& metric,
                                 double alpha = 0.05);

struct BenchResult {
  long long steps = 0;
  double seconds = 0.0;
  double steps_per_second = 0.0;
};

// Single-threaded step-rate benchmark: repeatedly runs episodes (no
// logging) until at least min_steps environment steps have been taken.
BenchResult benchmark_steps(const EnvConfig& cfg, const std::string& policy,
                            long long min_steps, std::uint64_t seed);

}  // namespace sta
