#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sta/scenario.hpp"

namespace sta {

enum class AgentMode : std::uint8_t {
  kIdle = 0,
  kSelectTask = 1,
  kMove = 2,
  kExecuteTask = 3,
};

enum class TaskStatus : std::uint8_t {
  kAvailable = 0,
  kAssigned = 1,
  kCompleted = 2,
};

enum class TerminalReason : std::uint8_t {
  kNone = 0,
  kAllCompleted = 1,
  kHorizon = 2,
};

struct WorldState {
  long long t = 0;
  std::vector<Vec2> positions;
  std::vector<AgentMode> modes;
  std::vector<int> assignments;    // task id, -1 when uncommitted
  std::vector<int> exec_progress;  // remaining EXECUTE steps, 0 otherwise
  std::vector<Vec2> task_locations;
  std::vector<TaskStatus> task_status;
  int completed_count = 0;

  int agent_count() const { return static_cast<int>(modes.size()); }
  int task_count() const { return static_cast<int>(task_status.size()); }
};

struct ConflictEvent {
  int task = -1;
  std::vector<int> contenders;  // ascending agent ids, size >= 2
  int winner = -1;
};

struct StepOutcome {
  std::vector<double> rewards;  // per agent
  double team_reward = 0.0;
  std::vector<ConflictEvent> conflicts;  // ascending task id
  std::vector<int> forced_idle;          // conflict losers, ascending
  std::vector<int> final_actions;        // submitted actions, losers -> IDLE
  std::vector<int> completions;          // task ids completed, ascending
  bool terminal = false;
  TerminalReason reason = TerminalReason::kNone;
};

double distance(Vec2 a, Vec2 b);

// Accumulated rounding across successive updates can leave the remaining gap
// an ulp above speed on what should be the arrival step; the relative slack
// absorbs that so a straight run of distance d arrives in exactly
// ceil(d / speed) steps.
inline constexpr double kArrivalSlack = 1e-9;

// One movement update toward target: pos + min(speed, d) * (target - pos) / d.
// Returns target exactly once the gap fits in a single step.
Vec2 move_agent(Vec2 pos, Vec2 target, double speed);

std::pair<bool, TerminalReason> is_terminal(const WorldState& state,
                                            const EnvConfig& cfg);

// Task placement, generator "cells-v1": std::mt19937_64(derive_seed(seed,
// kPlacementStream)) drives a partial Fisher-Yates over all integer grid
// cells except the origin cell, enumerated row-major. Task j sits at the
// j-th drawn cell. Throws PlacementError when m exceeds the free cells.
std::vector<Vec2> place_tasks(const EnvConfig& cfg, std::uint64_t seed);

class World {
 public:
  // Validates cfg and performs the initial reset.
  World(EnvConfig cfg, std::uint64_t seed);

  void reset(std::uint64_t seed);

  const EnvConfig& config() const { return cfg_; }
  const WorldState& state() const { return state_; }

  // One synchronized step; see the pipeline notes in world.cpp. Throws
  // InvalidActionError before any mutation if an action is not acceptable,
  // and Error when called on a terminal state.
  StepOutcome step(std::span<const int> actions);
  void step_into(std::span<const int> actions, StepOutcome& out);

 private:
  EnvConfig cfg_;
  WorldState state_;
  // scratch buffers reused across steps
  std::vector<int> movers_, executors_, idlers_, passers_, completers_;
};

}  // namespace sta
