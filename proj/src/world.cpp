#include "sta/world.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sta/actionspace.hpp"
#include "sta/allocation.hpp"
#include "sta/errors.hpp"
#include "sta/reward.hpp"
#include "sta/rng.hpp"

namespace sta {

double distance(Vec2 a, Vec2 b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  return std::sqrt(dx * dx + dy * dy);
}

Vec2 move_agent(Vec2 pos, Vec2 target, double speed) {
  const double dx = target.x - pos.x;
  const double dy = target.y - pos.y;
  const double d = std::sqrt(dx * dx + dy * dy);
  if (d <= speed * (1.0 + kArrivalSlack)) return target;
  const double scale = speed / d;
  return {pos.x + scale * dx, pos.y + scale * dy};
}

std::pair<bool, TerminalReason> is_terminal(const WorldState& state,
                                            const EnvConfig& cfg) {
  if (state.completed_count == state.task_count()) {
    return {true, TerminalReason::kAllCompleted};
  }
  if (state.t >= cfg.max_horizon) return {true, TerminalReason::kHorizon};
  return {false, TerminalReason::kNone};
}

std::vector<Vec2> place_tasks(const EnvConfig& cfg, std::uint64_t seed) {
  const long long cells = static_cast<long long>(cfg.width) * cfg.height;
  const long long origin_cx = std::min(
      static_cast<long long>(std::floor(cfg.origin.x)),
      static_cast<long long>(cfg.width) - 1);
  const long long origin_cy = std::min(
      static_cast<long long>(std::floor(cfg.origin.y)),
      static_cast<long long>(cfg.height) - 1);
  const long long origin_cell = origin_cy * cfg.width + origin_cx;
  if (cfg.m > cells - 1) {
    std::ostringstream msg;
    msg << "grid too small: " << cfg.m << " tasks need distinct cells but a "
        << cfg.width << "x" << cfg.height
        << " grid has only " << (cells - 1) << " free cells besides the origin";
    throw PlacementError(msg.str());
  }

  std::vector<long long> pool;
  pool.reserve(static_cast<std::size_t>(cells - 1));
  for (long long c = 0; c < cells; ++c) {
    if (c != origin_cell) pool.push_back(c);
  }

  std::mt19937_64 rng(derive_seed(seed, kPlacementStream));
  std::vector<Vec2> locations;
  locations.reserve(static_cast<std::size_t>(cfg.m));
  for (int k = 0; k < cfg.m; ++k) {
    const std::uint64_t pick =
        k + bounded(rng, pool.size() - static_cast<std::uint64_t>(k));
    std::swap(pool[static_cast<std::size_t>(k)], pool[pick]);
    const long long cell = pool[static_cast<std::size_t>(k)];
    locations.push_back({static_cast<double>(cell % cfg.width),
                         static_cast<double>(cell / cfg.width)});
  }
  return locations;
}

World::World(EnvConfig cfg, std::uint64_t seed) : cfg_(std::move(cfg)) {
  validate_config(cfg_);
  reset(seed);
}

void World::reset(std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(cfg_.n);
  state_.t = 0;
  state_.positions.assign(n, cfg_.origin);
  // every task starts AVAILABLE, so every agent starts at a decision point
  state_.modes.assign(n, AgentMode::kSelectTask);
  state_.assignments.assign(n, -1);
  state_.exec_progress.assign(n, 0);
  state_.task_locations = place_tasks(cfg_, seed);
  state_.task_status.assign(static_cast<std::size_t>(cfg_.m),
                            TaskStatus::kAvailable);
  state_.completed_count = 0;
}

namespace {

// Acceptability of one submitted action given the agent's current mode.
// Committed agents have no choice; a selector may either select an
// AVAILABLE task or stand down to IDLE for the step (a voluntary pass:
// coordinated group decisions need a legal way to leave a surplus selector
// unassigned when teammates have claimed every remaining task).
void check_action(const WorldState& state, int agent, int action, int m) {
  const auto fail = [&](const char* why) {
    std::ostringstream msg;
    msg << "invalid action " << action << " for agent " << agent << ": " << why;
    throw InvalidActionError(agent, action, msg.str());
  };
  if (action < 0 || action >= nominal_action_count(m)) {
    fail("action code out of range");
  }
  switch (state.modes[static_cast<std::size_t>(agent)]) {
    case AgentMode::kMove:
      if (action != kActionMove) fail("agent is committed to MOVE");
      break;
    case AgentMode::kExecuteTask:
      if (action != kActionExecute) fail("agent is committed to EXECUTE");
      break;
    case AgentMode::kIdle:
      if (action != kActionIdle) fail("agent has no task to act on");
      break;
    case AgentMode::kSelectTask:
      if (action == kActionIdle) break;  // voluntary pass
      if (!is_select(action)) fail("agent must select a task or pass");
      if (state.task_status[static_cast<std::size_t>(selected_task(action))] !=
          TaskStatus::kAvailable) {
        fail("selected task is not AVAILABLE");
      }
      break;
  }
}

}  // namespace

StepOutcome World::step(std::span<const int> actions) {
  StepOutcome out;
  step_into(actions, out);
  return out;
}

// Pipeline for one synchronized step at timestep t:
//   0. validate every action against the agent modes (no mutation yet)
//   1. resolve this step's selections: winners commit (task ASSIGNED, agent
//      MOVE), losers and voluntary passers idle for the step
//   2. agents that submitted MOVE advance; on arrival they switch to
//      EXECUTE_TASK with exec_progress = exec_time, effective next step
//   3. agents that submitted EXECUTE decrement progress; at zero the task
//      completes and the agent re-enters SELECT_TASK if anything is still
//      AVAILABLE, else IDLE
//   4. agents that submitted IDLE re-enter SELECT_TASK when tasks remain
//      AVAILABLE (fresh losers and passers from phase 1 stay IDLE so the
//      stand-down is visible for exactly one step)
//   5. rewards: completion reward for completers (decay uses this step's t,
//      the completed total includes every completion of this step), step
//      penalty for everyone else
//   6. t advances; terminal when all tasks are COMPLETED or t reaches
//      max_horizon
void World::step_into(std::span<const int> actions, StepOutcome& out) {
  const int n = state_.agent_count();
  const int m = state_.task_count();
  if (static_cast<int>(actions.size()) != n) {
    std::ostringstream msg;
    msg << "joint action has " << actions.size() << " entries, expected " << n;
    throw InvalidActionError(-1, -1, msg.str());
  }
  if (is_terminal(state_, cfg_).first) {
    throw Error("step called on a terminal state; reset first");
  }
  for (int i = 0; i < n; ++i) check_action(state_, i, actions[i], m);

  out.rewards.assign(static_cast<std::size_t>(n), 0.0);
  out.team_reward = 0.0;
  out.conflicts.clear();
  out.forced_idle.clear();
  out.final_actions.assign(actions.begin(), actions.end());
  out.completions.clear();

  movers_.clear();
  executors_.clear();
  idlers_.clear();
  passers_.clear();
  completers_.clear();
  std::vector<Selection> selections;
  selections.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    switch (actions[i]) {
      case kActionMove:
        movers_.push_back(i);
        break;
      case kActionExecute:
        executors_.push_back(i);
        break;
      case kActionIdle:
        if (state_.modes[static_cast<std::size_t>(i)] ==
            AgentMode::kSelectTask) {
          passers_.push_back(i);
        } else {
          idlers_.push_back(i);
        }
        break;
      default:
        selections.push_back({i, selected_task(actions[i])});
        break;
    }
  }

  // 1. selection conflicts
  AllocationResult alloc = resolve(selections, state_.positions,
                                   state_.task_locations, state_.task_status);
  for (const auto& win : alloc.winners) {
    state_.modes[static_cast<std::size_t>(win.agent)] = AgentMode::kMove;
    state_.assignments[static_cast<std::size_t>(win.agent)] = win.task;
    state_.task_status[static_cast<std::size_t>(win.task)] =
        TaskStatus::kAssigned;
  }
  for (int loser : alloc.losers) {
    state_.modes[static_cast<std::size_t>(loser)] = AgentMode::kIdle;
    out.final_actions[static_cast<std::size_t>(loser)] = kActionIdle;
  }
  for (int passer : passers_) {
    state_.modes[static_cast<std::size_t>(passer)] = AgentMode::kIdle;
  }
  out.conflicts = std::move(alloc.conflicts);
  out.forced_idle = std::move(alloc.losers);

  // 2. movement
  for (int i : movers_) {
    const auto idx = static_cast<std::size_t>(i);
    const Vec2 target =
        state_.task_locations[static_cast<std::size_t>(state_.assignments[idx])];
    state_.positions[idx] = move_agent(state_.positions[idx], target, cfg_.speed);
    if (state_.positions[idx].x == target.x &&
        state_.positions[idx].y == target.y) {
      state_.modes[idx] = AgentMode::kExecuteTask;
      state_.exec_progress[idx] = cfg_.exec_time;
    }
  }

  // 3. execution
  for (int i : executors_) {
    const auto idx = static_cast<std::size_t>(i);
    if (--state_.exec_progress[idx] == 0) {
      const int task = state_.assignments[idx];
      state_.task_status[static_cast<std::size_t>(task)] =
          TaskStatus::kCompleted;
      state_.assignments[idx] = -1;
      ++state_.completed_count;
      out.completions.push_back(task);
      completers_.push_back(i);
    }
  }
  std::sort(out.completions.begin(), out.completions.end());

  const bool any_available =
      std::any_of(state_.task_status.begin(), state_.task_status.end(),
                  [](TaskStatus s) { return s == TaskStatus::kAvailable; });
  for (int i : completers_) {
    state_.modes[static_cast<std::size_t>(i)] =
        any_available ? AgentMode::kSelectTask : AgentMode::kIdle;
  }

  // 4. idle promotion
  for (int i : idlers_) {
    if (any_available) {
      state_.modes[static_cast<std::size_t>(i)] = AgentMode::kSelectTask;
    }
  }

  // 5. rewards
  const double penalty = step_penalty(cfg_.reward);
  for (int i = 0; i < n; ++i) out.rewards[static_cast<std::size_t>(i)] = penalty;
  for (int i : completers_) {
    out.rewards[static_cast<std::size_t>(i)] =
        completion_reward(state_.t, state_.completed_count, cfg_.reward);
  }
  out.team_reward = team_reward(out.rewards);

  // 6. advance time
  ++state_.t;
  const auto [terminal, reason] = is_terminal(state_, cfg_);
  out.terminal = terminal;
  out.reason = reason;
}

}  // namespace sta
