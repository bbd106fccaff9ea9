#pragma once

#include <span>

#include "sta/scenario.hpp"

namespace sta {

// r0 - eta * floor(t / beta); decays with elapsed steps, never clamped.
double base_reward(long long t, const RewardParams& p);

// base_reward(t) * (1 + alpha * completed_total). completed_total counts
// every task completed by the end of step t, including simultaneous
// completions at t itself.
double completion_reward(long long t, int completed_total, const RewardParams& p);

// -lambda_step, paid by every agent that does not complete a task this step.
double step_penalty(const RewardParams& p);

struct RewardEvent {
  bool completion = false;
  long long t = 0;
  int completed_total = 0;
};

double agent_reward(const RewardEvent& event, const RewardParams& p);
double team_reward(std::span<const double> rewards);

}  // namespace sta
