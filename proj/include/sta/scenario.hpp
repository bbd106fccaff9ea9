#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sta {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Completion pays base(t) * (1 + alpha * completed_total) where
// base(t) = r0 - eta * floor(t / beta); every other agent-step costs
// lambda_step. Rewards are undiscounted and never clamped.
struct RewardParams {
  double r0 = 30.0;
  double eta = 0.5;
  double beta = 10.0;
  double alpha = 0.1;
  double lambda_step = 1.0;
};

struct EnvConfig {
  int n = 0;       // agents
  int m = 0;       // tasks
  int width = 0;   // grid cells along x
  int height = 0;  // grid cells along y
  int exec_time = 3;
  double speed = 1.0;
  RewardParams reward;
  Vec2 origin;            // shared start position
  long long max_horizon = 0;  // 0 means default_max_horizon()
};

// 50 * m * ceil((width + height) / speed)
long long default_max_horizon(int m, int width, int height, double speed);

// Validates and fills defaults; throws InvalidParameterError naming the
// offending field.
EnvConfig make_config(int n, int m, int width, int height, int exec_time = 3,
                      double speed = 1.0, RewardParams reward = {},
                      Vec2 origin = {}, long long max_horizon = 0);

void validate_config(const EnvConfig& cfg);

struct DerivedStats {
  double task_density = 0.0;     // m / (width * height)
  double tasks_per_agent = 0.0;  // m / n
  int choices_per_agent = 0;     // m
  std::string joint_actions;     // m^n, exact decimal digits
};

DerivedStats derived_quantities(const EnvConfig& cfg);

// base^exp as an exact decimal string; no floating point involved.
std::string exact_pow(std::uint64_t base, std::uint64_t exp);

struct Preset {
  std::string name;
  EnvConfig config;
};

const std::vector<Preset>& presets();
const std::vector<std::string>& preset_names();
bool is_preset(const std::string& name);
// Throws UnknownPresetError listing the valid names.
const EnvConfig& preset_config(const std::string& name);

}  // namespace sta
