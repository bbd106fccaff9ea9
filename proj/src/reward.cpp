#include "sta/reward.hpp"

#include <cmath>

namespace sta {

double base_reward(long long t, const RewardParams& p) {
  return p.r0 - p.eta * std::floor(static_cast<double>(t) / p.beta);
}

double completion_reward(long long t, int completed_total,
                         const RewardParams& p) {
  return base_reward(t, p) * (1.0 + p.alpha * completed_total);
}

double step_penalty(const RewardParams& p) { return -p.lambda_step; }

double agent_reward(const RewardEvent& event, const RewardParams& p) {
  return event.completion ? completion_reward(event.t, event.completed_total, p)
                          : step_penalty(p);
}

double team_reward(std::span<const double> rewards) {
  double total = 0.0;
  for (double r : rewards) total += r;
  return total;
}

}  // namespace sta
