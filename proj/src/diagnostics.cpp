#include "sta/diagnostics.hpp"

#include <algorithm>

#include "sta/actionspace.hpp"
#include "sta/errors.hpp"
#include "sta/harness.hpp"

namespace sta {

int conflicts_at(const std::vector<int>& selections) {
  std::vector<int> ids = selections;
  std::sort(ids.begin(), ids.end());
  int contested = 0;
  std::size_t i = 0;
  while (i < ids.size()) {
    std::size_t j = i;
    while (j < ids.size() && ids[j] == ids[i]) ++j;
    if (j - i >= 2) ++contested;
    i = j;
  }
  return contested;
}

int diversity_at(const std::vector<int>& final_actions) {
  std::vector<int> tasks;
  for (int action : final_actions) {
    if (is_select(action)) tasks.push_back(selected_task(action));
  }
  std::sort(tasks.begin(), tasks.end());
  tasks.erase(std::unique(tasks.begin(), tasks.end()), tasks.end());
  return static_cast<int>(tasks.size());
}

MetricsRecord episode_metrics(const EpisodeLog& log, const EnvConfig& cfg) {
  const long long horizon = static_cast<long long>(log.steps.size());
  if (horizon == 0) throw Error("episode_metrics: log has no steps");

  long long conflicts = 0;
  long long diversity_sum = 0;
  long long forced_idle_sum = 0;
  long long decision_active_sum = 0;
  long long completions = 0;
  double episode_return = 0.0;
  for (const StepRecord& step : log.steps) {
    conflicts += conflicts_at(step.selections);
    diversity_sum += diversity_at(step.final_actions);
    forced_idle_sum += step.forced_idle_count;
    decision_active_sum += step.decision_active_count;
    completions += step.completions_count;
    episode_return += step.team_reward;
  }

  MetricsRecord rec;
  rec.total_conflicts = conflicts;
  rec.horizon = horizon;
  rec.conflict_rate = static_cast<double>(conflicts) / horizon;
  rec.conflicts_per_task = static_cast<double>(conflicts) / cfg.m;
  rec.assignment_diversity = static_cast<double>(diversity_sum) / horizon;
  rec.per_agent_diversity = rec.assignment_diversity / cfg.n;
  rec.throughput = static_cast<double>(completions) / horizon;
  rec.episode_return = episode_return;
  rec.forced_idle_rate = static_cast<double>(forced_idle_sum) / horizon;
  rec.decision_active_fraction =
      static_cast<double>(decision_active_sum) / (static_cast<double>(cfg.n) * horizon);
  if (decision_active_sum > 0) {
    rec.conflicts_per_decision_opportunity =
        static_cast<double>(conflicts) / decision_active_sum;
    rec.diversity_per_decision_active_agent =
        static_cast<double>(diversity_sum) / decision_active_sum;
  } else {
    rec.degenerate_denominators = true;
  }
  return rec;
}

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> kNames = {
      "total_conflicts",
      "conflict_rate",
      "conflicts_per_task",
      "assignment_diversity",
      "per_agent_diversity",
      "throughput",
      "episode_return",
      "horizon",
      "forced_idle_rate",
      "decision_active_fraction",
      "conflicts_per_decision_opportunity",
      "diversity_per_decision_active_agent",
  };
  return kNames;
}

double metric_value(const MetricsRecord& rec, const std::string& name) {
  if (name == "total_conflicts") return static_cast<double>(rec.total_conflicts);
  if (name == "conflict_rate") return rec.conflict_rate;
  if (name == "conflicts_per_task") return rec.conflicts_per_task;
  if (name == "assignment_diversity") return rec.assignment_diversity;
  if (name == "per_agent_diversity") return rec.per_agent_diversity;
  if (name == "throughput") return rec.throughput;
  if (name == "episode_return") return rec.episode_return;
  if (name == "horizon") return static_cast<double>(rec.horizon);
  if (name == "forced_idle_rate") return rec.forced_idle_rate;
  if (name == "decision_active_fraction") return rec.decision_active_fraction;
  if (name == "conflicts_per_decision_opportunity") {
    return rec.conflicts_per_decision_opportunity;
  }
  if (name == "diversity_per_decision_active_agent") {
    return rec.diversity_per_decision_active_agent;
  }
  throw Error("unknown metric '" + name + "'");
}

}  // namespace sta
