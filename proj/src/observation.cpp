#include "sta/observation.hpp"

#include <cmath>

namespace sta {

std::size_t observation_size(int n, int m) {
  return static_cast<std::size_t>(n) * (4 + static_cast<std::size_t>(m)) +
         3 * static_cast<std::size_t>(m);
}

void observation_into(const WorldState& state, const EnvConfig& cfg,
                      std::vector<double>& out) {
  const int n = state.agent_count();
  const int m = state.task_count();
  const double diag = std::sqrt(static_cast<double>(cfg.width) * cfg.width +
                                static_cast<double>(cfg.height) * cfg.height);
  out.assign(observation_size(n, m), 0.0);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    out[k + static_cast<std::size_t>(state.modes[idx])] = 1.0;
    k += 4;
    for (int j = 0; j < m; ++j) {
      out[k++] = distance(state.positions[idx],
                          state.task_locations[static_cast<std::size_t>(j)]) /
                 diag;
    }
  }
  for (int j = 0; j < m; ++j) {
    out[k + static_cast<std::size_t>(
                state.task_status[static_cast<std::size_t>(j)])] = 1.0;
    k += 3;
  }
}

std::vector<double> observation(const WorldState& state, const EnvConfig& cfg) {
  std::vector<double> out;
  observation_into(state, cfg, out);
  return out;
}

}  // namespace sta
