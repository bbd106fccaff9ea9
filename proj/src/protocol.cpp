#include "sta/protocol.hpp"

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "json_convert.hpp"
#include "sta/actionspace.hpp"
#include "sta/diagnostics.hpp"
#include "sta/errors.hpp"
#include "sta/io.hpp"
#include "sta/observation.hpp"
#include "sta/policies.hpp"
#include "sta/scenario.hpp"

using json = nlohmann::json;

namespace sta {

namespace {

std::string error_line(const std::string& code, const std::string& message) {
  // messages can quote raw request bytes; replace invalid UTF-8 rather than
  // letting the serializer throw
  return json{{"kind", "error"}, {"code", code}, {"message", message}}.dump(
      -1, ' ', false, json::error_handler_t::replace);
}

json positions_json(const std::vector<Vec2>& points) {
  json out = json::array();
  for (const Vec2& p : points) out.push_back(json::array({p.x, p.y}));
  return out;
}

}  // namespace

struct Session::Impl {
  std::optional<EnvConfig> default_config;
  std::optional<World> world;

  std::string state_line() const {
    const WorldState& s = world->state();
    const auto [terminal, reason] = is_terminal(s, world->config());

    json modes = json::array();
    for (AgentMode mode : s.modes) modes.push_back(static_cast<int>(mode));
    json statuses = json::array();
    for (TaskStatus status : s.task_status) {
      statuses.push_back(static_cast<int>(status));
    }
    json masks = json::array();
    for (const MaskRow& row : valid_action_masks(s)) {
      std::string bits(row.size(), '0');
      for (std::size_t a = 0; a < row.size(); ++a) {
        if (row[a]) bits[a] = '1';
      }
      masks.push_back(std::move(bits));
    }

    return json{{"kind", "state"},
                {"version", kProtocolVersion},
                {"t", s.t},
                {"positions", positions_json(s.positions)},
                {"modes", modes},
                {"assignments", s.assignments},
                {"exec_progress", s.exec_progress},
                {"task_locations", positions_json(s.task_locations)},
                {"task_status", statuses},
                {"completed", s.completed_count},
                {"masks", masks},
                {"observation", observation(s, world->config())},
                {"terminal", terminal},
                {"reason", terminal_reason_name(reason)}}
        .dump();
  }

  std::vector<std::string> handle_reset(const json& request) {
    EnvConfig cfg;
    if (request.contains("preset")) {
      if (!request["preset"].is_string()) {
        return {error_line("bad-request", "'preset' must be a string")};
      }
      try {
        cfg = preset_config(request["preset"].get<std::string>());
      } catch (const UnknownPresetError& e) {
        return {error_line("unknown-preset", e.what())};
      }
    } else if (request.contains("config")) {
      try {
        cfg = detail::config_from_json(request["config"]);
      } catch (const InvalidParameterError& e) {
        return {error_line("bad-config", e.what())};
      } catch (const json::exception& e) {
        return {error_line("bad-config",
                           std::string("config object: ") + e.what())};
      }
    } else if (default_config) {
      cfg = *default_config;
    } else {
      return {error_line(
          "bad-config",
          "reset needs a 'preset' or 'config' (no server default is set)")};
    }

    std::uint64_t seed = 0;
    if (request.contains("seed")) {
      if (!request["seed"].is_number_unsigned()) {
        return {
            error_line("bad-request", "'seed' must be a non-negative integer")};
      }
      seed = request["seed"].get<std::uint64_t>();
    }

    try {
      world.emplace(cfg, seed);
    } catch (const Error& e) {
      // e.g. a custom config whose grid cannot hold all tasks
      return {error_line("bad-config", e.what())};
    }
    return {state_line()};
  }

  std::vector<std::string> handle_step(const json& request) {
    if (!world) {
      return {error_line("wrong-phase", "no episode yet; send a reset first")};
    }
    if (is_terminal(world->state(), world->config()).first) {
      return {error_line("wrong-phase", "episode is terminal; send a reset")};
    }
    if (!request.contains("actions") || !request["actions"].is_array()) {
      return {error_line("bad-request", "'actions' must be an array")};
    }
    std::vector<int> actions;
    try {
      actions = request["actions"].get<std::vector<int>>();
    } catch (const json::exception&) {
      return {error_line("bad-request", "'actions' must hold integers")};
    }
    const int n = world->state().agent_count();
    if (static_cast<int>(actions.size()) != n) {
      return {error_line("bad-request",
                         "'actions' needs one entry per agent (" +
                             std::to_string(n) + ")")};
    }

    StepOutcome outcome;
    try {
      outcome = world->step(actions);
    } catch (const InvalidActionError& e) {
      // validation precedes mutation, so the episode is still live
      return {error_line("invalid-action", e.what())};
    }

    const json outcome_json{
        {"kind", "outcome"},
        {"rewards", outcome.rewards},
        {"team_reward", outcome.team_reward},
        {"conflicts", detail::conflicts_to_json(outcome.conflicts)},
        {"forced_idle", outcome.forced_idle},
        {"final_actions", outcome.final_actions},
        {"completions", outcome.completions},
        {"terminal", outcome.terminal},
        {"reason", terminal_reason_name(outcome.reason)}};
    return {outcome_json.dump(), state_line()};
  }

  std::vector<std::string> handle_info() const {
    const json j{{"kind", "info"},
                 {"version", kProtocolVersion},
                 {"presets", preset_names()},
                 {"policies", policy_names()},
                 {"metrics", metric_names()},
                 {"action_codes",
                  json{{"idle", kActionIdle},
                       {"move", kActionMove},
                       {"execute", kActionExecute},
                       {"select_base", kActionSelectBase}}}};
    return {j.dump()};
  }
};

Session::Session(std::optional<EnvConfig> default_config)
    : impl_(std::make_unique<Impl>()) {
  impl_->default_config = std::move(default_config);
}

Session::~Session() = default;
Session::Session(Session&&) noexcept = default;
Session& Session::operator=(Session&&) noexcept = default;

std::vector<std::string> Session::handle_line(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};  // blank lines are ignored

  json request;
  try {
    request = json::parse(line);
  } catch (const json::exception& e) {
    return {error_line("bad-request", std::string("not valid json: ") + e.what())};
  }
  if (!request.is_object()) {
    return {error_line("bad-request", "request must be a json object")};
  }
  const json kind_field = request.value("kind", json());
  if (!kind_field.is_string()) {
    return {error_line("bad-request", "request needs a string 'kind'")};
  }
  const std::string kind = kind_field.get<std::string>();

  try {
    if (kind == "reset") return impl_->handle_reset(request);
    if (kind == "step") return impl_->handle_step(request);
    if (kind == "info") return impl_->handle_info();
  } catch (const std::exception& e) {
    // last-resort guard: a session survives anything a request provokes
    return {error_line("internal", e.what())};
  }
  return {error_line("unknown-kind", "unknown request kind '" + kind + "'")};
}

int serve_stdio(std::optional<EnvConfig> default_config) {
  Session session(std::move(default_config));
  std::string line;
  while (std::getline(std::cin, line)) {
    for (const std::string& response : session.handle_line(line)) {
      std::cout << response << '\n';
    }
    std::cout.flush();
  }
  return 0;
}

}  // namespace sta
