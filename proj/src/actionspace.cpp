#include "sta/actionspace.hpp"

#include "sta/errors.hpp"

namespace sta {

int nominal_action_count(int m) { return kActionSelectBase + m; }

void fill_valid_actions(const WorldState& state, int agent, MaskRow& row) {
  const int m = state.task_count();
  row.assign(static_cast<std::size_t>(nominal_action_count(m)), 0);
  switch (state.modes[static_cast<std::size_t>(agent)]) {
    case AgentMode::kMove:
      row[kActionMove] = 1;
      break;
    case AgentMode::kExecuteTask:
      row[kActionExecute] = 1;
      break;
    case AgentMode::kIdle:
      row[kActionIdle] = 1;
      break;
    case AgentMode::kSelectTask:
      for (int j = 0; j < m; ++j) {
        if (state.task_status[static_cast<std::size_t>(j)] ==
            TaskStatus::kAvailable) {
          row[static_cast<std::size_t>(select_action(j))] = 1;
        }
      }
      break;
  }
}

MaskRow valid_actions(const WorldState& state, int agent) {
  MaskRow row;
  fill_valid_actions(state, agent, row);
  return row;
}

std::vector<MaskRow> valid_action_masks(const WorldState& state) {
  std::vector<MaskRow> masks(static_cast<std::size_t>(state.agent_count()));
  for (int i = 0; i < state.agent_count(); ++i) {
    fill_valid_actions(state, i, masks[static_cast<std::size_t>(i)]);
  }
  return masks;
}

std::string assignment_space_size(int selectable_tasks, int selecting_agents) {
  if (selectable_tasks < 0 || selecting_agents < 0) {
    throw Error("assignment_space_size: counts must be nonnegative");
  }
  if (selecting_agents == 0) return "1";
  return exact_pow(static_cast<std::uint64_t>(selectable_tasks),
                   static_cast<std::uint64_t>(selecting_agents));
}

int available_task_count(const WorldState& state) {
  int count = 0;
  for (TaskStatus s : state.task_status) {
    if (s == TaskStatus::kAvailable) ++count;
  }
  return count;
}

int selecting_agent_count(const WorldState& state) {
  int count = 0;
  for (AgentMode mode : state.modes) {
    if (mode == AgentMode::kSelectTask) ++count;
  }
  return count;
}

}  // namespace sta
