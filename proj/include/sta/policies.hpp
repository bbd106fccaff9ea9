#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sta/actionspace.hpp"
#include "sta/world.hpp"

namespace sta {

// Uniform draw over the true entries of the agent's mask. Committed and
// idle agents return their single valid action without consuming the rng.
int random_valid(const WorldState& state, int agent, std::mt19937_64& rng);

// Mask-only mirror of random_valid: given just a validity row, reproduces
// the same draw sequence. Used by wire-protocol clients.
int random_valid_from_mask(const MaskRow& mask, std::mt19937_64& rng);

// Nearest AVAILABLE task, ties to the smallest task id; committed agents
// emit their forced action. Every selector computes the same argmin from a
// shared start position, so collisions at t = 0 are built in.
int greedy_nearest(const WorldState& state, int agent);

// Centralized sequential assignment: selectors in index order each take the
// nearest AVAILABLE task not yet claimed this step (ties to the smallest
// id); selectors left without an unclaimed task stand down to IDLE. No two
// agents ever select the same task, so episodes are conflict-free.
std::vector<int> coordinated_greedy(const WorldState& state);

const std::vector<std::string>& policy_names();

// Stateful facade used by the harness; owns the policy rng stream.
class Policy {
 public:
  // Throws Error on an unknown name.
  Policy(const std::string& name, std::uint64_t seed);

  const std::string& name() const { return name_; }
  std::vector<int> joint_action(const WorldState& state);
  void joint_action_into(const WorldState& state, std::vector<int>& out);

 private:
  enum class Kind { kRandomValid, kGreedyNearest, kCoordinatedGreedy };
  Kind kind_;
  std::string name_;
  std::mt19937_64 rng_;
};

}  // namespace sta
