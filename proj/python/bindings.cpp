#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <vector>

#include "sta/actionspace.hpp"
#include "sta/diagnostics.hpp"
#include "sta/errors.hpp"
#include "sta/harness.hpp"
#include "sta/io.hpp"
#include "sta/observation.hpp"
#include "sta/policies.hpp"
#include "sta/protocol.hpp"
#include "sta/reward.hpp"
#include "sta/rng.hpp"
#include "sta/scenario.hpp"
#include "sta/stats.hpp"
#include "sta/world.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "commitment-constrained spatial task allocation testbed";

  py::register_exception<sta::Error>(mod, "StaError", PyExc_RuntimeError);

  // --- scenario --------------------------------------------------------------

  py::class_<sta::Vec2>(mod, "Vec2")
      .def(py::init<>())
      .def(py::init([](double x, double y) { return sta::Vec2{x, y}; }),
           py::arg("x"), py::arg("y"))
      .def_readwrite("x", &sta::Vec2::x)
      .def_readwrite("y", &sta::Vec2::y)
      .def("__repr__", [](const sta::Vec2& v) {
        return "Vec2(" + sta::format_double(v.x) + ", " +
               sta::format_double(v.y) + ")";
      });

  py::class_<sta::RewardParams>(mod, "RewardParams")
      .def(py::init<>())
      .def_readwrite("r0", &sta::RewardParams::r0)
      .def_readwrite("eta", &sta::RewardParams::eta)
      .def_readwrite("beta", &sta::RewardParams::beta)
      .def_readwrite("alpha", &sta::RewardParams::alpha)
      .def_readwrite("lambda_step", &sta::RewardParams::lambda_step);

  py::class_<sta::EnvConfig>(mod, "EnvConfig")
      .def(py::init<>())
      .def_readwrite("n", &sta::EnvConfig::n)
      .def_readwrite("m", &sta::EnvConfig::m)
      .def_readwrite("width", &sta::EnvConfig::width)
      .def_readwrite("height", &sta::EnvConfig::height)
      .def_readwrite("exec_time", &sta::EnvConfig::exec_time)
      .def_readwrite("speed", &sta::EnvConfig::speed)
      .def_readwrite("reward", &sta::EnvConfig::reward)
      .def_readwrite("origin", &sta::EnvConfig::origin)
      .def_readwrite("max_horizon", &sta::EnvConfig::max_horizon);

  mod.def("make_config", &sta::make_config, py::arg("n"), py::arg("m"),
          py::arg("width"), py::arg("height"), py::arg("exec_time") = 3,
          py::arg("speed") = 1.0, py::arg("reward") = sta::RewardParams{},
          py::arg("origin") = sta::Vec2{}, py::arg("max_horizon") = 0);
  mod.def("validate_config", &sta::validate_config);
  mod.def("default_max_horizon", &sta::default_max_horizon);

  py::class_<sta::DerivedStats>(mod, "DerivedStats")
      .def_readonly("task_density", &sta::DerivedStats::task_density)
      .def_readonly("tasks_per_agent", &sta::DerivedStats::tasks_per_agent)
      .def_readonly("choices_per_agent", &sta::DerivedStats::choices_per_agent)
      .def_readonly("joint_actions", &sta::DerivedStats::joint_actions);
  mod.def("derived_quantities", &sta::derived_quantities);
  mod.def("exact_pow", &sta::exact_pow);

  py::class_<sta::Preset>(mod, "Preset")
      .def_readonly("name", &sta::Preset::name)
      .def_readonly("config", &sta::Preset::config);
  mod.def("presets", &sta::presets, py::return_value_policy::copy);
  mod.def("preset_names", &sta::preset_names, py::return_value_policy::copy);
  mod.def("is_preset", &sta::is_preset);
  mod.def("preset_config", &sta::preset_config, py::return_value_policy::copy);

  // --- world -----------------------------------------------------------------

  py::enum_<sta::AgentMode>(mod, "AgentMode")
      .value("IDLE", sta::AgentMode::kIdle)
      .value("SELECT_TASK", sta::AgentMode::kSelectTask)
      .value("MOVE", sta::AgentMode::kMove)
      .value("EXECUTE_TASK", sta::AgentMode::kExecuteTask);

  py::enum_<sta::TaskStatus>(mod, "TaskStatus")
      .value("AVAILABLE", sta::TaskStatus::kAvailable)
      .value("ASSIGNED", sta::TaskStatus::kAssigned)
      .value("COMPLETED", sta::TaskStatus::kCompleted);

  py::enum_<sta::TerminalReason>(mod, "TerminalReason")
      .value("NONE", sta::TerminalReason::kNone)
      .value("ALL_COMPLETED", sta::TerminalReason::kAllCompleted)
      .value("HORIZON", sta::TerminalReason::kHorizon);

  py::class_<sta::WorldState>(mod, "WorldState")
      .def_readonly("t", &sta::WorldState::t)
      .def_readonly("positions", &sta::WorldState::positions)
      .def_readonly("modes", &sta::WorldState::modes)
      .def_readonly("assignments", &sta::WorldState::assignments)
      .def_readonly("exec_progress", &sta::WorldState::exec_progress)
      .def_readonly("task_locations", &sta::WorldState::task_locations)
      .def_readonly("task_status", &sta::WorldState::task_status)
      .def_readonly("completed_count", &sta::WorldState::completed_count)
      .def("agent_count", &sta::WorldState::agent_count)
      .def("task_count", &sta::WorldState::task_count);

  py::class_<sta::ConflictEvent>(mod, "ConflictEvent")
      .def_readonly("task", &sta::ConflictEvent::task)
      .def_readonly("contenders", &sta::ConflictEvent::contenders)
      .def_readonly("winner", &sta::ConflictEvent::winner);

  py::class_<sta::StepOutcome>(mod, "StepOutcome")
      .def_readonly("rewards", &sta::StepOutcome::rewards)
      .def_readonly("team_reward", &sta::StepOutcome::team_reward)
      .def_readonly("conflicts", &sta::StepOutcome::conflicts)
      .def_readonly("forced_idle", &sta::StepOutcome::forced_idle)
      .def_readonly("final_actions", &sta::StepOutcome::final_actions)
      .def_readonly("completions", &sta::StepOutcome::completions)
      .def_readonly("terminal", &sta::StepOutcome::terminal)
      .def_readonly("reason", &sta::StepOutcome::reason);

  mod.def("distance", &sta::distance);
  mod.def("move_agent", &sta::move_agent);
  mod.def("place_tasks", &sta::place_tasks);
  mod.def("is_terminal", [](const sta::WorldState& state,
                            const sta::EnvConfig& cfg) {
    const auto [terminal, reason] = sta::is_terminal(state, cfg);
    return py::make_tuple(terminal, reason);
  });

  py::class_<sta::World>(mod, "World")
      .def(py::init<sta::EnvConfig, std::uint64_t>(), py::arg("config"),
           py::arg("seed") = 0)
      .def("reset", &sta::World::reset)
      .def_property_readonly("config", &sta::World::config,
                             py::return_value_policy::copy)
      .def_property_readonly("state", &sta::World::state,
                             py::return_value_policy::copy)
      .def("step",
           [](sta::World& world, const std::vector<int>& actions) {
             return world.step(actions);
           })
      .def("masks",
           [](const sta::World& world) {
             return sta::valid_action_masks(world.state());
           })
      .def("observation", [](const sta::World& world) {
        return sta::observation(world.state(), world.config());
      });

  // --- action space ----------------------------------------------------------

  mod.attr("ACTION_IDLE") = sta::kActionIdle;
  mod.attr("ACTION_MOVE") = sta::kActionMove;
  mod.attr("ACTION_EXECUTE") = sta::kActionExecute;
  mod.attr("ACTION_SELECT_BASE") = sta::kActionSelectBase;
  mod.def("select_action", &sta::select_action);
  mod.def("is_select", &sta::is_select);
  mod.def("selected_task", &sta::selected_task);
  mod.def("nominal_action_count", &sta::nominal_action_count);
  mod.def("valid_actions", &sta::valid_actions);
  mod.def("valid_action_masks", &sta::valid_action_masks);
  mod.def("assignment_space_size", &sta::assignment_space_size);
  mod.def("available_task_count", &sta::available_task_count);
  mod.def("selecting_agent_count", &sta::selecting_agent_count);

  // --- rewards ---------------------------------------------------------------

  mod.def("base_reward", &sta::base_reward);
  mod.def("completion_reward", &sta::completion_reward);
  mod.def("step_penalty", &sta::step_penalty);

  // --- diagnostics -----------------------------------------------------------

  py::class_<sta::StepRecord>(mod, "StepRecord")
      .def_readonly("t", &sta::StepRecord::t)
      .def_readonly("selections", &sta::StepRecord::selections)
      .def_readonly("submitted_actions", &sta::StepRecord::submitted_actions)
      .def_readonly("final_actions", &sta::StepRecord::final_actions)
      .def_readonly("conflicts", &sta::StepRecord::conflicts)
      .def_readonly("forced_idle_count", &sta::StepRecord::forced_idle_count)
      .def_readonly("decision_active_count",
                    &sta::StepRecord::decision_active_count)
      .def_readonly("completions_count", &sta::StepRecord::completions_count)
      .def_readonly("team_reward", &sta::StepRecord::team_reward);

  py::class_<sta::MetricsRecord>(mod, "MetricsRecord")
      .def_readonly("total_conflicts", &sta::MetricsRecord::total_conflicts)
      .def_readonly("conflict_rate", &sta::MetricsRecord::conflict_rate)
      .def_readonly("conflicts_per_task",
                    &sta::MetricsRecord::conflicts_per_task)
      .def_readonly("assignment_diversity",
                    &sta::MetricsRecord::assignment_diversity)
      .def_readonly("per_agent_diversity",
                    &sta::MetricsRecord::per_agent_diversity)
      .def_readonly("throughput", &sta::MetricsRecord::throughput)
      .def_readonly("episode_return", &sta::MetricsRecord::episode_return)
      .def_readonly("horizon", &sta::MetricsRecord::horizon)
      .def_readonly("forced_idle_rate", &sta::MetricsRecord::forced_idle_rate)
      .def_readonly("decision_active_fraction",
                    &sta::MetricsRecord::decision_active_fraction)
      .def_readonly("conflicts_per_decision_opportunity",
                    &sta::MetricsRecord::conflicts_per_decision_opportunity)
      .def_readonly("diversity_per_decision_active_agent",
                    &sta::MetricsRecord::diversity_per_decision_active_agent)
      .def_readonly("degenerate_denominators",
                    &sta::MetricsRecord::degenerate_denominators);

  mod.def("conflicts_at", &sta::conflicts_at);
  mod.def("diversity_at", &sta::diversity_at);
  mod.def("episode_metrics", &sta::episode_metrics);
  mod.def("metric_names", &sta::metric_names, py::return_value_policy::copy);
  mod.def("metric_value", &sta::metric_value);

  // --- policies --------------------------------------------------------------

  mod.def("greedy_nearest", &sta::greedy_nearest);
  mod.def("coordinated_greedy", &sta::coordinated_greedy);
  mod.def("policy_names", &sta::policy_names, py::return_value_policy::copy);

  py::class_<sta::Policy>(mod, "Policy")
      .def(py::init<const std::string&, std::uint64_t>(), py::arg("name"),
           py::arg("seed"))
      .def_property_readonly("name", &sta::Policy::name)
      .def("joint_action", &sta::Policy::joint_action);

  // --- harness ---------------------------------------------------------------

  py::class_<sta::FinalSummary>(mod, "FinalSummary")
      .def_readonly("reason", &sta::FinalSummary::reason)
      .def_readonly("completed", &sta::FinalSummary::completed)
      .def_readonly("t", &sta::FinalSummary::t);

  py::class_<sta::EpisodeLog>(mod, "EpisodeLog")
      .def_readonly("config", &sta::EpisodeLog::config)
      .def_readonly("policy", &sta::EpisodeLog::policy)
      .def_readonly("seed", &sta::EpisodeLog::seed)
      .def_readonly("steps", &sta::EpisodeLog::steps)
      .def_readonly("final", &sta::EpisodeLog::final)
      .def_readonly("episode_return", &sta::EpisodeLog::episode_return);

  mod.def("run_episode", &sta::run_episode, py::arg("config"),
          py::arg("policy"), py::arg("seed"));
  mod.def("replay", &sta::replay);

  py::class_<sta::MetricAggregate>(mod, "MetricAggregate")
      .def_readonly("mean", &sta::MetricAggregate::mean)
      .def_readonly("ci95_halfwidth", &sta::MetricAggregate::ci95_halfwidth)
      .def_readonly("per_seed", &sta::MetricAggregate::per_seed);

  py::class_<sta::AggregateReport>(mod, "AggregateReport")
      .def_readonly("config", &sta::AggregateReport::config)
      .def_readonly("policy", &sta::AggregateReport::policy)
      .def_readonly("seeds", &sta::AggregateReport::seeds)
      .def_readonly("episodes_per_seed",
                    &sta::AggregateReport::episodes_per_seed)
      .def_readonly("metrics", &sta::AggregateReport::metrics);

  mod.def("evaluate",
          [](const sta::EnvConfig& cfg, const std::string& policy,
             const std::vector<std::uint64_t>& seeds, int episodes_per_seed) {
            return sta::evaluate(cfg, policy, seeds, episodes_per_seed);
          },
          py::arg("config"), py::arg("policy"), py::arg("seeds"),
          py::arg("episodes_per_seed"));

  py::class_<sta::ComparisonRow>(mod, "ComparisonRow")
      .def_readonly("metric", &sta::ComparisonRow::metric)
      .def_readonly("mean_a", &sta::ComparisonRow::mean_a)
      .def_readonly("mean_b", &sta::ComparisonRow::mean_b)
      .def_readonly("welch", &sta::ComparisonRow::welch)
      .def_readonly("no_change", &sta::ComparisonRow::no_change);

  mod.def("scaling_comparison", &sta::scaling_comparison, py::arg("a"),
          py::arg("b"), py::arg("metric"), py::arg("alpha") = 0.05);

  py::class_<sta::BenchResult>(mod, "BenchResult")
      .def_readonly("steps", &sta::BenchResult::steps)
      .def_readonly("seconds", &sta::BenchResult::seconds)
      .def_readonly("steps_per_second", &sta::BenchResult::steps_per_second);
  mod.def("benchmark_steps", &sta::benchmark_steps);

  // --- statistics ------------------------------------------------------------

  py::class_<sta::Ci95>(mod, "Ci95")
      .def_readonly("mean", &sta::Ci95::mean)
      .def_readonly("halfwidth", &sta::Ci95::halfwidth)
      .def_readonly("degenerate", &sta::Ci95::degenerate);
  mod.def("ci95", [](const std::vector<double>& sample) {
    return sta::ci95(sample);
  });

  py::class_<sta::WelchResult>(mod, "WelchResult")
      .def_readonly("t", &sta::WelchResult::t)
      .def_readonly("df", &sta::WelchResult::df)
      .def_readonly("p", &sta::WelchResult::p)
      .def_readonly("significant", &sta::WelchResult::significant)
      .def_readonly("direction", &sta::WelchResult::direction);
  mod.def("welch_t",
          [](const std::vector<double>& a, const std::vector<double>& b,
             double alpha) { return sta::welch_t(a, b, alpha); },
          py::arg("a"), py::arg("b"), py::arg("alpha") = 0.05);

  // --- observation -----------------------------------------------------------

  mod.def("observation_size", &sta::observation_size);
  mod.def("observation", &sta::observation);

  // --- io --------------------------------------------------------------------

  mod.def("config_to_text", &sta::config_to_text);
  mod.def("config_from_text", &sta::config_from_text);
  mod.def("load_config_source", &sta::load_config_source);
  mod.def("episode_log_to_jsonl", &sta::episode_log_to_jsonl);
  mod.def("episode_log_from_jsonl", &sta::episode_log_from_jsonl);
  mod.def("metrics_csv_header", &sta::metrics_csv_header);
  mod.def("metrics_csv_row", &sta::metrics_csv_row);
  mod.def("metrics_to_csv", &sta::metrics_to_csv);
  mod.def("report_to_json", &sta::report_to_json);
  mod.def("report_from_json", &sta::report_from_json);
  mod.def("report_to_csv", &sta::report_to_csv);
  mod.def("terminal_reason_name", &sta::terminal_reason_name);
  mod.def("format_double", &sta::format_double);

  // --- rng and protocol --------------------------------------------------------

  mod.def("mix64", &sta::mix64);
  mod.def("derive_seed", &sta::derive_seed);
  mod.def("episode_seed", &sta::episode_seed);
  mod.attr("PLACEMENT_STREAM") = sta::kPlacementStream;
  mod.attr("POLICY_STREAM") = sta::kPolicyStream;

  mod.attr("PROTOCOL_VERSION") = sta::kProtocolVersion;
  py::class_<sta::Session>(mod, "Session")
      .def(py::init([](const std::optional<sta::EnvConfig>& default_config) {
             return sta::Session(default_config);
           }),
           py::arg("default_config") = py::none())
      .def("handle_line", &sta::Session::handle_line);
}
