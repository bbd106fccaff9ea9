#pragma once

#include <vector>

#include "sta/world.hpp"

namespace sta {

struct Selection {
  int agent = -1;
  int task = -1;
};

struct AllocationResult {
  std::vector<Selection> winners;        // granted (agent, task), ascending agent
  std::vector<int> losers;               // ascending agent ids
  std::vector<ConflictEvent> conflicts;  // tasks with >= 2 contenders, ascending task
};

// Resolves one step's selections: among the contenders of each task the
// nearest agent wins (exact double comparison), ties broken by the smallest
// agent id; everyone else idles for the step. Selected tasks must be
// AVAILABLE and each agent may appear at most once.
AllocationResult resolve(const std::vector<Selection>& selections,
                         const std::vector<Vec2>& positions,
                         const std::vector<Vec2>& task_locations,
                         const std::vector<TaskStatus>& task_status);

}  // namespace sta
