#pragma once

#include <cstddef>
#include <vector>

#include "sta/world.hpp"

namespace sta {

// Flat observation, length n * (4 + m) + 3 * m:
//   per agent: mode one-hot (idle, select_task, move, execute_task),
//              then distance to each task divided by the grid diagonal
//              sqrt(width^2 + height^2), so every entry lies in [0, 1];
//   then per task: status one-hot (available, assigned, completed).
std::size_t observation_size(int n, int m);
std::vector<double> observation(const WorldState& state, const EnvConfig& cfg);
void observation_into(const WorldState& state, const EnvConfig& cfg,
                      std::vector<double>& out);

}  // namespace sta
