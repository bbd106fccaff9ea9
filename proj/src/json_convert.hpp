#pragma once

// Internal json <-> struct conversions shared by the file writers and the
// wire protocol. Not part of the public headers.

#include <vector>

#include "json.hpp"
#include "sta/scenario.hpp"
#include "sta/world.hpp"

namespace sta::detail {

inline nlohmann::json config_to_json(const EnvConfig& cfg) {
  return nlohmann::json{{"n", cfg.n},
                        {"m", cfg.m},
                        {"width", cfg.width},
                        {"height", cfg.height},
                        {"exec_time", cfg.exec_time},
                        {"speed", cfg.speed},
                        {"r0", cfg.reward.r0},
                        {"eta", cfg.reward.eta},
                        {"beta", cfg.reward.beta},
                        {"alpha", cfg.reward.alpha},
                        {"lambda_step", cfg.reward.lambda_step},
                        {"origin_x", cfg.origin.x},
                        {"origin_y", cfg.origin.y},
                        {"max_horizon", cfg.max_horizon}};
}

inline EnvConfig config_from_json(const nlohmann::json& j) {
  EnvConfig cfg;
  cfg.n = j.at("n").get<int>();
  cfg.m = j.at("m").get<int>();
  cfg.width = j.at("width").get<int>();
  cfg.height = j.at("height").get<int>();
  cfg.exec_time = j.value("exec_time", 3);
  cfg.speed = j.value("speed", 1.0);
  cfg.reward.r0 = j.value("r0", RewardParams{}.r0);
  cfg.reward.eta = j.value("eta", RewardParams{}.eta);
  cfg.reward.beta = j.value("beta", RewardParams{}.beta);
  cfg.reward.alpha = j.value("alpha", RewardParams{}.alpha);
  cfg.reward.lambda_step = j.value("lambda_step", RewardParams{}.lambda_step);
  cfg.origin.x = j.value("origin_x", 0.0);
  cfg.origin.y = j.value("origin_y", 0.0);
  cfg.max_horizon = j.value("max_horizon", 0LL);
  if (cfg.max_horizon == 0) {
    cfg.max_horizon =
        default_max_horizon(cfg.m, cfg.width, cfg.height, cfg.speed);
  }
  validate_config(cfg);
  return cfg;
}

inline nlohmann::json conflicts_to_json(const std::vector<ConflictEvent>& conflicts) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : conflicts) {
    out.push_back(nlohmann::json{{"task", c.task},
                                 {"contenders", c.contenders},
                                 {"winner", c.winner}});
  }
  return out;
}

inline std::vector<ConflictEvent> conflicts_from_json(const nlohmann::json& j) {
  std::vector<ConflictEvent> out;
  for (const auto& c : j) {
    ConflictEvent event;
    event.task = c.at("task").get<int>();
    event.contenders = c.at("contenders").get<std::vector<int>>();
    event.winner = c.at("winner").get<int>();
    out.push_back(std::move(event));
  }
  return out;
}

}  // namespace sta::detail
