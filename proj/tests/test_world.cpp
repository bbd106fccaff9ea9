#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "sta/actionspace.hpp"
#include "sta/errors.hpp"
#include "sta/policies.hpp"
#include "sta/reward.hpp"
#include "sta/rng.hpp"
#include "sta/world.hpp"

using namespace sta;

TEST_CASE("euclidean distance") {
  CHECK(distance({0, 0}, {3, 4}) == 5.0);
  CHECK(distance({1, 1}, {1, 1}) == 0.0);
  CHECK(distance({-1, 2}, {2, -2}) == 5.0);
}

TEST_CASE("move_agent walks the straight line and lands exactly") {
  const Vec2 target{4.0, 0.0};
  Vec2 pos{0.0, 0.0};
  pos = move_agent(pos, target, 1.0);
  CHECK(pos.x == doctest::Approx(1.0));
  CHECK(pos.y == 0.0);
  pos = move_agent(pos, target, 1.0);
  pos = move_agent(pos, target, 1.0);
  pos = move_agent(pos, target, 1.0);
  CHECK(pos.x == 4.0);  // exact, not approximate
  CHECK(pos.y == 0.0);
  // arrived agents stay put
  pos = move_agent(pos, target, 1.0);
  CHECK(pos.x == 4.0);
}

TEST_CASE("a straight run of distance d arrives in ceil(d / speed) steps") {
  for (double speed : {1.0, 0.75, 2.5}) {
    for (int dx = 0; dx <= 12; ++dx) {
      for (int dy = 0; dy <= 8; ++dy) {
        if (dx == 0 && dy == 0) continue;
        const Vec2 target{static_cast<double>(dx), static_cast<double>(dy)};
        const double d = distance({0, 0}, target);
        const auto expected = static_cast<long long>(std::ceil(d / speed));
        Vec2 pos{0.0, 0.0};
        long long steps = 0;
        while ((pos.x != target.x || pos.y != target.y) && steps < 1000) {
          pos = move_agent(pos, target, speed);
          ++steps;
        }
        CAPTURE(speed);
        CAPTURE(dx);
        CAPTURE(dy);
        CHECK(steps == expected);
      }
    }
  }
}

TEST_CASE("task placement is deterministic, in bounds and collision free") {
  const EnvConfig cfg = make_config(3, 6, 5, 3);
  const auto a = place_tasks(cfg, 7);
  const auto b = place_tasks(cfg, 7);
  REQUIRE(a.size() == 6);
  for (std::size_t j = 0; j < a.size(); ++j) {
    CHECK(a[j].x == b[j].x);
    CHECK(a[j].y == b[j].y);
  }

  std::set<std::pair<double, double>> cells;
  for (const Vec2& p : a) {
    CHECK(p.x == std::floor(p.x));
    CHECK(p.y == std::floor(p.y));
    CHECK(p.x >= 0.0);
    CHECK(p.x < cfg.width);
    CHECK(p.y >= 0.0);
    CHECK(p.y < cfg.height);
    CHECK(!(p.x == 0.0 && p.y == 0.0));  // origin cell stays free
    cells.insert({p.x, p.y});
  }
  CHECK(cells.size() == 6);  // all distinct

  // different seeds land on different layouts somewhere in 0..4
  bool any_difference = false;
  for (std::uint64_t seed = 1; seed <= 4 && !any_difference; ++seed) {
    const auto other = place_tasks(cfg, seed);
    for (std::size_t j = 0; j < other.size(); ++j) {
      if (other[j].x != a[j].x || other[j].y != a[j].y) any_difference = true;
    }
  }
  CHECK(any_difference);
}

TEST_CASE("placement fails when tasks outnumber the free cells") {
  CHECK_NOTHROW(place_tasks(make_config(1, 15, 4, 4), 0));
  CHECK_THROWS_AS((void)place_tasks(make_config(1, 16, 4, 4), 0),
                  PlacementError);
}

TEST_CASE("reset puts everyone at the origin, ready to select") {
  World world(make_config(3, 6, 5, 3), 11);
  const WorldState& s = world.state();
  CHECK(s.t == 0);
  CHECK(s.completed_count == 0);
  for (int i = 0; i < 3; ++i) {
    CHECK(s.positions[i].x == 0.0);
    CHECK(s.positions[i].y == 0.0);
    CHECK(s.modes[i] == AgentMode::kSelectTask);
    CHECK(s.assignments[i] == -1);
    CHECK(s.exec_progress[i] == 0);
  }
  for (TaskStatus status : s.task_status) {
    CHECK(status == TaskStatus::kAvailable);
  }
}

TEST_CASE("an uncontested commitment travels, executes and completes") {
  const EnvConfig cfg = make_config(1, 2, 5, 3);
  World world(cfg, 3);
  const Vec2 task0 = world.state().task_locations[0];
  const double d = distance(cfg.origin, task0);
  const auto travel_steps = static_cast<long long>(std::ceil(d / cfg.speed));

  StepOutcome out = world.step(std::vector<int>{select_action(0)});
  CHECK(out.final_actions == std::vector<int>{select_action(0)});
  CHECK(out.conflicts.empty());
  CHECK(out.forced_idle.empty());
  CHECK(out.rewards[0] == step_penalty(cfg.reward));
  CHECK(world.state().modes[0] == AgentMode::kMove);
  CHECK(world.state().assignments[0] == 0);
  CHECK(world.state().task_status[0] == TaskStatus::kAssigned);

  long long moves = 0;
  while (world.state().modes[0] == AgentMode::kMove) {
    out = world.step(std::vector<int>{kActionMove});
    ++moves;
    REQUIRE(moves <= travel_steps);
  }
  CHECK(moves == travel_steps);
  CHECK(world.state().modes[0] == AgentMode::kExecuteTask);
  CHECK(world.state().exec_progress[0] == cfg.exec_time);
  CHECK(world.state().positions[0].x == task0.x);
  CHECK(world.state().positions[0].y == task0.y);

  for (int k = 0; k < cfg.exec_time - 1; ++k) {
    out = world.step(std::vector<int>{kActionExecute});
    CHECK(out.completions.empty());
    CHECK(world.state().exec_progress[0] == cfg.exec_time - 1 - k);
  }
  const long long completion_t = world.state().t;
  out = world.step(std::vector<int>{kActionExecute});
  CHECK(out.completions == std::vector<int>{0});
  CHECK(out.rewards[0] == completion_reward(completion_t, 1, cfg.reward));
  CHECK(world.state().task_status[0] == TaskStatus::kCompleted);
  CHECK(world.state().completed_count == 1);
  CHECK(world.state().assignments[0] == -1);
  // task 1 is still AVAILABLE, so the agent re-enters the decision point
  CHECK(world.state().modes[0] == AgentMode::kSelectTask);
  CHECK_FALSE(out.terminal);
}

TEST_CASE("conflict losers idle visibly for one step, then rejoin") {
  const EnvConfig cfg = make_config(2, 3, 5, 3);
  World world(cfg, 5);

  // both start at the origin: exact tie, smaller id wins
  StepOutcome out =
      world.step(std::vector<int>{select_action(1), select_action(1)});
  REQUIRE(out.conflicts.size() == 1);
  CHECK(out.conflicts[0].task == 1);
  CHECK(out.conflicts[0].contenders == std::vector<int>{0, 1});
  CHECK(out.conflicts[0].winner == 0);
  CHECK(out.forced_idle == std::vector<int>{1});
  CHECK(out.final_actions == std::vector<int>{select_action(1), kActionIdle});
  CHECK(world.state().modes[0] == AgentMode::kMove);
  CHECK(world.state().modes[1] == AgentMode::kIdle);
  CHECK(world.state().task_status[1] == TaskStatus::kAssigned);

  // the loser's only action now is IDLE; afterwards it is promoted back
  CHECK(valid_actions(world.state(), 1) ==
        MaskRow{1, 0, 0, 0, 0, 0});
  out = world.step(std::vector<int>{kActionMove, kActionIdle});
  CHECK(out.forced_idle.empty());
  CHECK(world.state().modes[1] == AgentMode::kSelectTask);

  // and may now claim a different task unopposed
  out = world.step(std::vector<int>{kActionMove, select_action(0)});
  CHECK(out.conflicts.empty());
  CHECK(world.state().modes[1] == AgentMode::kMove);
  CHECK(world.state().assignments[1] == 0);
}

TEST_CASE("a selector may stand down voluntarily") {
  const EnvConfig cfg = make_config(2, 1, 5, 3);
  World world(cfg, 2);

  // the mask never offers IDLE to a selector, yet the pass is accepted
  CHECK(valid_actions(world.state(), 1) == MaskRow{0, 0, 0, 1});
  StepOutcome out = world.step(std::vector<int>{select_action(0), kActionIdle});
  CHECK(out.conflicts.empty());
  CHECK(out.forced_idle.empty());  // voluntary, not forced
  CHECK(world.state().modes[1] == AgentMode::kIdle);

  // nothing is AVAILABLE while task 0 is ASSIGNED, so the idler stays idle
  out = world.step(std::vector<int>{kActionMove, kActionIdle});
  CHECK(world.state().modes[1] == AgentMode::kIdle);
}

TEST_CASE("illegal submissions throw before any state changes") {
  const EnvConfig cfg = make_config(2, 2, 5, 3);
  World world(cfg, 9);
  world.step(std::vector<int>{select_action(0), kActionIdle});
  // now: agent 0 MOVE, agent 1 IDLE, task 0 ASSIGNED, task 1 AVAILABLE

  const auto snapshot = [&] {
    const WorldState& s = world.state();
    return std::make_tuple(s.t, s.modes, s.assignments, s.task_status,
                           s.completed_count);
  };
  const auto before = snapshot();

  const auto rejected = [&](std::vector<int> actions) {
    try {
      world.step(actions);
    } catch (const InvalidActionError&) {
      return snapshot() == before;
    }
    return false;
  };

  CHECK(rejected({kActionIdle, kActionIdle}));          // mover must move
  CHECK(rejected({select_action(1), kActionIdle}));     // mover cannot select
  CHECK(rejected({kActionExecute, kActionIdle}));       // not executing yet
  CHECK(rejected({kActionMove, kActionMove}));          // idler cannot move
  CHECK(rejected({kActionMove, kActionExecute}));
  CHECK(rejected({kActionMove, select_action(1)}));     // idler cannot select
  CHECK(rejected({kActionMove, 99}));                   // out of range
  CHECK(rejected({kActionMove, -1}));

  // a selector cannot take a task that is not AVAILABLE
  World fresh(cfg, 9);
  fresh.step(std::vector<int>{select_action(0), kActionIdle});
  fresh.step(std::vector<int>{kActionMove, kActionIdle});
  // agent 1 is back in SELECT_TASK; task 0 is still ASSIGNED
  REQUIRE(fresh.state().modes[1] == AgentMode::kSelectTask);
  CHECK_THROWS_AS(
      (void)fresh.step(std::vector<int>{kActionMove, select_action(0)}),
      InvalidActionError);

  // joint action arity is checked too
  CHECK_THROWS_AS((void)world.step(std::vector<int>{kActionMove}),
                  InvalidActionError);
}

TEST_CASE("error text names the agent and the offending action") {
  World world(make_config(1, 1, 5, 3), 1);
  try {
    world.step(std::vector<int>{kActionMove});
    FAIL("expected a throw");
  } catch (const InvalidActionError& e) {
    CHECK(e.agent == 0);
    CHECK(e.action == kActionMove);
    const std::string what = e.what();
    CHECK(what.find("agent 0") != std::string::npos);
    CHECK(what.find("action 1") != std::string::npos);
  }
}

TEST_CASE("every transition the dynamics produce is a legal mode edge") {
  for (const char* preset : {"3A-6T-5x3", "5A-12T-10x6"}) {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
      const EnvConfig cfg = preset_config(preset);
      World world(cfg, seed);
      Policy policy("random_valid", derive_seed(seed, kPolicyStream));
      while (!is_terminal(world.state(), cfg).first) {
        const auto before = world.state().modes;
        world.step(policy.joint_action(world.state()));
        const auto& after = world.state().modes;
        for (std::size_t i = 0; i < before.size(); ++i) {
          CAPTURE(preset);
          CAPTURE(seed);
          CAPTURE(i);
          CHECK(test::legal_transition(before[i], after[i]));
        }

        // structural invariants alongside every step
        const WorldState& s = world.state();
        int completed = 0;
        for (TaskStatus status : s.task_status) {
          if (status == TaskStatus::kCompleted) ++completed;
        }
        CHECK(completed == s.completed_count);
        std::vector<int> holders(s.task_status.size(), 0);
        for (int i = 0; i < s.agent_count(); ++i) {
          const bool committed = s.modes[i] == AgentMode::kMove ||
                                 s.modes[i] == AgentMode::kExecuteTask;
          CHECK((s.assignments[i] >= 0) == committed);
          CHECK((s.exec_progress[i] > 0) ==
                (s.modes[i] == AgentMode::kExecuteTask));
          if (committed) ++holders[s.assignments[i]];
        }
        for (std::size_t j = 0; j < holders.size(); ++j) {
          if (s.task_status[j] == TaskStatus::kAssigned) {
            CHECK(holders[j] == 1);
          } else {
            CHECK(holders[j] == 0);
          }
        }
      }
    }
  }
}

TEST_CASE("all tasks completed beats the horizon when both land together") {
  // measure the completion step, then rerun with the horizon set exactly there
  const EnvConfig probe = make_config(1, 1, 5, 3);
  World world(probe, 4);
  Policy policy("greedy_nearest", 0);
  while (!is_terminal(world.state(), probe).first) {
    world.step(policy.joint_action(world.state()));
  }
  const long long completion_step = world.state().t;
  REQUIRE(world.state().completed_count == 1);

  const EnvConfig pinned =
      make_config(1, 1, 5, 3, 3, 1.0, {}, {}, completion_step);
  World rerun(pinned, 4);
  Policy again("greedy_nearest", 0);
  StepOutcome out;
  while (!is_terminal(rerun.state(), pinned).first) {
    out = rerun.step(again.joint_action(rerun.state()));
  }
  CHECK(rerun.state().t == completion_step);
  CHECK(out.terminal);
  CHECK(out.reason == TerminalReason::kAllCompleted);
}

TEST_CASE("the horizon cuts an episode short") {
  const EnvConfig cfg = make_config(2, 4, 5, 3, 3, 1.0, {}, {}, 2);
  World world(cfg, 6);
  StepOutcome out =
      world.step(std::vector<int>{select_action(0), select_action(1)});
  CHECK_FALSE(out.terminal);
  out = world.step(std::vector<int>{kActionMove, kActionMove});
  CHECK(out.terminal);
  CHECK(out.reason == TerminalReason::kHorizon);
  CHECK(world.state().completed_count < 4);
  CHECK_THROWS_AS(
      (void)world.step(std::vector<int>{kActionMove, kActionMove}), Error);
}

TEST_CASE("simultaneous completions share one completed total") {
  // find a placement with two tasks the same distance from the origin
  const EnvConfig cfg = make_config(2, 6, 5, 3);
  std::uint64_t chosen_seed = 0;
  int task_a = -1, task_b = -1;
  for (std::uint64_t seed = 0; seed < 200 && task_a < 0; ++seed) {
    const auto locations = place_tasks(cfg, seed);
    for (std::size_t i = 0; i < locations.size() && task_a < 0; ++i) {
      for (std::size_t j = i + 1; j < locations.size(); ++j) {
        if (distance(cfg.origin, locations[i]) ==
            distance(cfg.origin, locations[j])) {
          chosen_seed = seed;
          task_a = static_cast<int>(i);
          task_b = static_cast<int>(j);
          break;
        }
      }
    }
  }
  REQUIRE(task_a >= 0);

  World world(cfg, chosen_seed);
  StepOutcome out =
      world.step(std::vector<int>{select_action(task_a), select_action(task_b)});
  while (world.state().modes[0] == AgentMode::kMove) {
    out = world.step(std::vector<int>{kActionMove, kActionMove});
  }
  REQUIRE(world.state().modes[1] == AgentMode::kExecuteTask);  // same arrival
  const long long completion_t = world.state().t + cfg.exec_time - 1;
  for (int k = 0; k < cfg.exec_time; ++k) {
    out = world.step(std::vector<int>{kActionExecute, kActionExecute});
  }
  REQUIRE(out.completions.size() == 2);
  CHECK(world.state().completed_count == 2);
  const double expected = completion_reward(completion_t, 2, cfg.reward);
  CHECK(out.rewards[0] == expected);
  CHECK(out.rewards[1] == expected);
}
