#include "sta/policies.hpp"

#include <limits>

#include "sta/errors.hpp"
#include "sta/rng.hpp"

namespace sta {

namespace {

int forced_action(AgentMode mode) {
  switch (mode) {
    case AgentMode::kMove:
      return kActionMove;
    case AgentMode::kExecuteTask:
      return kActionExecute;
    default:
      return kActionIdle;
  }
}

// nearest AVAILABLE task that `accept` admits; ties to the smallest task id
template <typename Accept>
int nearest_available(const WorldState& state, int agent, Accept accept) {
  const Vec2 pos = state.positions[static_cast<std::size_t>(agent)];
  int best = -1;
  double best_distance = std::numeric_limits<double>::infinity();
  for (int j = 0; j < state.task_count(); ++j) {
    if (state.task_status[static_cast<std::size_t>(j)] != TaskStatus::kAvailable ||
        !accept(j)) {
      continue;
    }
    const double d =
        distance(pos, state.task_locations[static_cast<std::size_t>(j)]);
    if (d < best_distance) {
      best_distance = d;
      best = j;
    }
  }
  return best;
}

}  // namespace

int random_valid(const WorldState& state, int agent, std::mt19937_64& rng) {
  if (state.modes[static_cast<std::size_t>(agent)] != AgentMode::kSelectTask) {
    return forced_action(state.modes[static_cast<std::size_t>(agent)]);
  }
  int available = 0;
  for (TaskStatus s : state.task_status) {
    if (s == TaskStatus::kAvailable) ++available;
  }
  auto pick = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(available)));
  for (int j = 0; j < state.task_count(); ++j) {
    if (state.task_status[static_cast<std::size_t>(j)] == TaskStatus::kAvailable &&
        pick-- == 0) {
      return select_action(j);
    }
  }
  throw Error("random_valid: selector has no AVAILABLE task");
}

int random_valid_from_mask(const MaskRow& mask, std::mt19937_64& rng) {
  // mirrors random_valid: forced and idle rows skip the rng, select rows
  // consume exactly one bounded draw
  if (mask[kActionIdle]) return kActionIdle;
  if (mask[kActionMove]) return kActionMove;
  if (mask[kActionExecute]) return kActionExecute;
  std::uint64_t valid = 0;
  for (std::size_t a = kActionSelectBase; a < mask.size(); ++a) {
    if (mask[a]) ++valid;
  }
  if (valid == 0) throw Error("random_valid_from_mask: empty mask");
  auto pick = bounded(rng, valid);
  for (std::size_t a = kActionSelectBase; a < mask.size(); ++a) {
    if (mask[a] && pick-- == 0) return static_cast<int>(a);
  }
  throw Error("random_valid_from_mask: unreachable");
}

int greedy_nearest(const WorldState& state, int agent) {
  if (state.modes[static_cast<std::size_t>(agent)] != AgentMode::kSelectTask) {
    return forced_action(state.modes[static_cast<std::size_t>(agent)]);
  }
  const int best = nearest_available(state, agent, [](int) { return true; });
  if (best < 0) throw Error("greedy_nearest: selector has no AVAILABLE task");
  return select_action(best);
}

std::vector<int> coordinated_greedy(const WorldState& state) {
  std::vector<int> actions(static_cast<std::size_t>(state.agent_count()),
                           kActionIdle);
  std::vector<std::uint8_t> claimed(static_cast<std::size_t>(state.task_count()),
                                    0);
  for (int i = 0; i < state.agent_count(); ++i) {
    const AgentMode mode = state.modes[static_cast<std::size_t>(i)];
    if (mode != AgentMode::kSelectTask) {
      actions[static_cast<std::size_t>(i)] = forced_action(mode);
      continue;
    }
    const int best = nearest_available(state, i, [&claimed](int j) {
      return claimed[static_cast<std::size_t>(j)] == 0;
    });
    if (best >= 0) {
      claimed[static_cast<std::size_t>(best)] = 1;
      actions[static_cast<std::size_t>(i)] = select_action(best);
    }
    // no unclaimed task left: stand down (IDLE) for this step
  }
  return actions;
}

const std::vector<std::string>& policy_names() {
  static const std::vector<std::string> kNames = {
      "random_valid", "greedy_nearest", "coordinated_greedy"};
  return kNames;
}

Policy::Policy(const std::string& name, std::uint64_t seed)
    : name_(name), rng_(seed) {
  if (name == "random_valid") {
    kind_ = Kind::kRandomValid;
  } else if (name == "greedy_nearest") {
    kind_ = Kind::kGreedyNearest;
  } else if (name == "coordinated_greedy") {
    kind_ = Kind::kCoordinatedGreedy;
  } else {
    std::string msg = "unknown policy '" + name + "'; valid policies:";
    for (const auto& p : policy_names()) msg += ' ' + p;
    throw Error(msg);
  }
}

std::vector<int> Policy::joint_action(const WorldState& state) {
  std::vector<int> actions;
  joint_action_into(state, actions);
  return actions;
}

void Policy::joint_action_into(const WorldState& state, std::vector<int>& out) {
  switch (kind_) {
    case Kind::kCoordinatedGreedy:
      out = coordinated_greedy(state);
      break;
    case Kind::kRandomValid:
      out.resize(static_cast<std::size_t>(state.agent_count()));
      for (int i = 0; i < state.agent_count(); ++i) {
        out[static_cast<std::size_t>(i)] = random_valid(state, i, rng_);
      }
      break;
    case Kind::kGreedyNearest:
      out.resize(static_cast<std::size_t>(state.agent_count()));
      for (int i = 0; i < state.agent_count(); ++i) {
        out[static_cast<std::size_t>(i)] = greedy_nearest(state, i);
      }
      break;
  }
}

}  // namespace sta
