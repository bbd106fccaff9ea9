#pragma once

#include <string>
#include <vector>

#include "sta/world.hpp"

namespace sta {

// One step of an episode, carrying everything needed to recompute the
// per-episode metrics offline and to replay the episode.
struct StepRecord {
  long long t = 0;
  std::vector<int> selections;         // task ids selected this step, sorted
  std::vector<int> submitted_actions;  // raw joint action
  std::vector<int> final_actions;      // after conflict resolution
  std::vector<ConflictEvent> conflicts;
  int forced_idle_count = 0;
  int decision_active_count = 0;  // agents in SELECT_TASK this step
  int completions_count = 0;
  double team_reward = 0.0;
};

struct MetricsRecord {
  long long total_conflicts = 0;   // K: steps' contested-task counts, summed
  double conflict_rate = 0.0;      // K / H
  double conflicts_per_task = 0.0; // K / m
  double assignment_diversity = 0.0;  // mean distinct selected tasks per step
  double per_agent_diversity = 0.0;   // assignment_diversity / n
  double throughput = 0.0;            // completions / H
  double episode_return = 0.0;
  long long horizon = 0;  // H, realized episode length in steps
  double forced_idle_rate = 0.0;          // forced idles / H
  double decision_active_fraction = 0.0;  // sum decision_active / (n * H)
  // Opportunity-normalized variants; denominator is the total number of
  // decision-active agent-steps. Reported as 0 (and flagged) when that is 0.
  double conflicts_per_decision_opportunity = 0.0;
  double diversity_per_decision_active_agent = 0.0;
  bool degenerate_denominators = false;
};

// Number of task ids appearing at least twice in this step's selections.
int conflicts_at(const std::vector<int>& selections);

// Number of distinct tasks selected in this step's final actions.
int diversity_at(const std::vector<int>& final_actions);

struct EpisodeLog;  // harness.hpp
MetricsRecord episode_metrics(const EpisodeLog& log, const EnvConfig& cfg);

// Fixed metric ordering used by CSV columns and evaluation reports.
const std::vector<std::string>& metric_names();
double metric_value(const MetricsRecord& rec, const std::string& name);

}  // namespace sta
