#include "sta/allocation.hpp"

#include <algorithm>
#include <sstream>

#include "sta/errors.hpp"

namespace sta {

AllocationResult resolve(const std::vector<Selection>& selections,
                         const std::vector<Vec2>& positions,
                         const std::vector<Vec2>& task_locations,
                         const std::vector<TaskStatus>& task_status) {
  AllocationResult result;
  if (selections.empty()) return result;

  std::vector<Selection> ordered = selections;
  std::sort(ordered.begin(), ordered.end(), [](Selection a, Selection b) {
    return a.task != b.task ? a.task < b.task : a.agent < b.agent;
  });
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const auto [agent, task] = ordered[i];
    if (task < 0 || task >= static_cast<int>(task_status.size())) {
      std::ostringstream msg;
      msg << "agent " << agent << " selected nonexistent task " << task;
      throw Error(msg.str());
    }
    if (task_status[static_cast<std::size_t>(task)] != TaskStatus::kAvailable) {
      std::ostringstream msg;
      msg << "agent " << agent << " selected task " << task
          << " which is not AVAILABLE";
      throw Error(msg.str());
    }
  }
  std::vector<int> agents;
  agents.reserve(ordered.size());
  for (const auto& sel : ordered) agents.push_back(sel.agent);
  std::sort(agents.begin(), agents.end());
  if (std::adjacent_find(agents.begin(), agents.end()) != agents.end()) {
    throw Error("an agent appears twice in the selections");
  }

  // walk the task-grouped runs; contenders arrive in ascending agent order,
  // so a strict distance comparison hands ties to the smallest agent id
  std::size_t i = 0;
  while (i < ordered.size()) {
    std::size_t j = i;
    while (j < ordered.size() && ordered[j].task == ordered[i].task) ++j;
    const int task = ordered[i].task;
    const Vec2 location = task_locations[static_cast<std::size_t>(task)];
    int winner = ordered[i].agent;
    double best = distance(positions[static_cast<std::size_t>(winner)], location);
    for (std::size_t k = i + 1; k < j; ++k) {
      const int agent = ordered[k].agent;
      const double d =
          distance(positions[static_cast<std::size_t>(agent)], location);
      if (d < best) {
        best = d;
        winner = agent;
      }
    }
    result.winners.push_back({winner, task});
    if (j - i >= 2) {
      ConflictEvent event;
      event.task = task;
      event.winner = winner;
      for (std::size_t k = i; k < j; ++k) {
        event.contenders.push_back(ordered[k].agent);
        if (ordered[k].agent != winner) result.losers.push_back(ordered[k].agent);
      }
      result.conflicts.push_back(std::move(event));
    }
    i = j;
  }

  std::sort(result.winners.begin(), result.winners.end(),
            [](Selection a, Selection b) { return a.agent < b.agent; });
  std::sort(result.losers.begin(), result.losers.end());
  return result;
}

}  // namespace sta
