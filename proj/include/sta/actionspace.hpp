#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sta/world.hpp"

namespace sta {

// Flat action codes shared by every agent: 0 idle, 1 move, 2 execute,
// 3 + j selects task j.
inline constexpr int kActionIdle = 0;
inline constexpr int kActionMove = 1;
inline constexpr int kActionExecute = 2;
inline constexpr int kActionSelectBase = 3;

inline constexpr int select_action(int task) { return kActionSelectBase + task; }
inline constexpr bool is_select(int action) { return action >= kActionSelectBase; }
inline constexpr int selected_task(int action) { return action - kActionSelectBase; }

// 3 + m
int nominal_action_count(int m);

// Per-agent validity row indexed by action code, one byte per entry.
using MaskRow = std::vector<std::uint8_t>;

// Pure function of the state:
//   SELECT_TASK  -> exactly the SELECT codes of AVAILABLE tasks
//   MOVE         -> exactly {MOVE}
//   EXECUTE_TASK -> exactly {EXECUTE}
//   IDLE         -> exactly {IDLE}
MaskRow valid_actions(const WorldState& state, int agent);
void fill_valid_actions(const WorldState& state, int agent, MaskRow& row);
std::vector<MaskRow> valid_action_masks(const WorldState& state);

// m_t^{n_t}: joint assignment space when n_t agents each choose among m_t
// selectable tasks. Exact decimal string; "1" when n_t is 0.
std::string assignment_space_size(int selectable_tasks, int selecting_agents);

int available_task_count(const WorldState& state);
int selecting_agent_count(const WorldState& state);

}  // namespace sta
