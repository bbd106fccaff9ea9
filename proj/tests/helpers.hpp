#pragma once

// Shared fixtures and independent oracles for the test suite. The recount
// below re-derives every episode metric from the logged submissions and
// fresh dynamics, on purpose without calling conflicts_at, diversity_at or
// episode_metrics, so the two implementations check each other.

#include <algorithm>
#include <vector>

#include "sta/actionspace.hpp"
#include "sta/diagnostics.hpp"
#include "sta/harness.hpp"
#include "sta/world.hpp"

namespace sta::test {

// Mode transitions the dynamics may produce between consecutive steps.
//   SELECT -> MOVE    selection granted
//   SELECT -> IDLE    conflict loser or voluntary pass, visible one step
//   MOVE   -> MOVE    still traveling
//   MOVE   -> EXECUTE arrived
//   EXEC   -> EXEC    work remaining
//   EXEC   -> SELECT  completed, tasks still available
//   EXEC   -> IDLE    completed, nothing left to select
//   IDLE   -> SELECT  re-enters the decision point
//   IDLE   -> IDLE    nothing available to select
inline bool legal_transition(AgentMode from, AgentMode to) {
  switch (from) {
    case AgentMode::kSelectTask:
      return to == AgentMode::kMove || to == AgentMode::kIdle;
    case AgentMode::kMove:
      return to == AgentMode::kMove || to == AgentMode::kExecuteTask;
    case AgentMode::kExecuteTask:
      return to == AgentMode::kExecuteTask || to == AgentMode::kSelectTask ||
             to == AgentMode::kIdle;
    case AgentMode::kIdle:
      return to == AgentMode::kSelectTask || to == AgentMode::kIdle;
  }
  return false;
}

// Re-runs the logged submissions through fresh dynamics and recounts all
// metrics with its own tallies. Matches episode_metrics bit for bit.
inline MetricsRecord recount_metrics(const EpisodeLog& log,
                                     const EnvConfig& cfg) {
  World world(cfg, log.seed);

  long long contested_sum = 0;
  long long diversity_sum = 0;
  long long forced_idle_sum = 0;
  long long decision_active_sum = 0;
  long long completions = 0;
  double episode_return = 0.0;

  for (const StepRecord& step : log.steps) {
    for (AgentMode mode : world.state().modes) {
      if (mode == AgentMode::kSelectTask) ++decision_active_sum;
    }

    std::vector<int> picked;
    for (int action : step.submitted_actions) {
      if (action >= kActionSelectBase) picked.push_back(action - kActionSelectBase);
    }
    std::sort(picked.begin(), picked.end());
    for (std::size_t i = 0; i < picked.size();) {
      std::size_t j = i;
      while (j < picked.size() && picked[j] == picked[i]) ++j;
      if (j - i >= 2) ++contested_sum;
      i = j;
    }

    const StepOutcome out = world.step(step.submitted_actions);

    std::vector<int> granted;
    for (std::size_t i = 0; i < out.final_actions.size(); ++i) {
      if (out.final_actions[i] >= kActionSelectBase) {
        granted.push_back(out.final_actions[i] - kActionSelectBase);
      }
      if (step.submitted_actions[i] >= kActionSelectBase &&
          out.final_actions[i] == kActionIdle) {
        ++forced_idle_sum;
      }
    }
    std::sort(granted.begin(), granted.end());
    granted.erase(std::unique(granted.begin(), granted.end()), granted.end());
    diversity_sum += static_cast<long long>(granted.size());

    completions += static_cast<long long>(out.completions.size());
    episode_return += out.team_reward;
  }

  const long long horizon = static_cast<long long>(log.steps.size());
  MetricsRecord rec;
  rec.total_conflicts = contested_sum;
  rec.horizon = horizon;
  rec.conflict_rate = static_cast<double>(contested_sum) / horizon;
  rec.conflicts_per_task = static_cast<double>(contested_sum) / cfg.m;
  rec.assignment_diversity = static_cast<double>(diversity_sum) / horizon;
  rec.per_agent_diversity = rec.assignment_diversity / cfg.n;
  rec.throughput = static_cast<double>(completions) / horizon;
  rec.episode_return = episode_return;
  rec.forced_idle_rate = static_cast<double>(forced_idle_sum) / horizon;
  rec.decision_active_fraction =
      static_cast<double>(decision_active_sum) /
      (static_cast<double>(cfg.n) * horizon);
  if (decision_active_sum > 0) {
    rec.conflicts_per_decision_opportunity =
        static_cast<double>(contested_sum) / decision_active_sum;
    rec.diversity_per_decision_active_agent =
        static_cast<double>(diversity_sum) / decision_active_sum;
  } else {
    rec.degenerate_denominators = true;
  }
  return rec;
}

inline bool metrics_identical(const MetricsRecord& a, const MetricsRecord& b) {
  return a.total_conflicts == b.total_conflicts &&
         a.conflict_rate == b.conflict_rate &&
         a.conflicts_per_task == b.conflicts_per_task &&
         a.assignment_diversity == b.assignment_diversity &&
         a.per_agent_diversity == b.per_agent_diversity &&
         a.throughput == b.throughput &&
         a.episode_return == b.episode_return && a.horizon == b.horizon &&
         a.forced_idle_rate == b.forced_idle_rate &&
         a.decision_active_fraction == b.decision_active_fraction &&
         a.conflicts_per_decision_opportunity ==
             b.conflicts_per_decision_opportunity &&
         a.diversity_per_decision_active_agent ==
             b.diversity_per_decision_active_agent &&
         a.degenerate_denominators == b.degenerate_denominators;
}

// Hand-buildable state for mask and policy unit tests: n selectors at the
// origin, m available tasks on the x axis at (j + 1, 0).
inline WorldState make_state(int n, int m) {
  WorldState s;
  s.positions.assign(static_cast<std::size_t>(n), Vec2{0.0, 0.0});
  s.modes.assign(static_cast<std::size_t>(n), AgentMode::kSelectTask);
  s.assignments.assign(static_cast<std::size_t>(n), -1);
  s.exec_progress.assign(static_cast<std::size_t>(n), 0);
  for (int j = 0; j < m; ++j) {
    s.task_locations.push_back(Vec2{static_cast<double>(j + 1), 0.0});
  }
  s.task_status.assign(static_cast<std::size_t>(m), TaskStatus::kAvailable);
  return s;
}

}  // namespace sta::test
