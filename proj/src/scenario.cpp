#include "sta/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sta/errors.hpp"

namespace sta {

namespace {

void require(bool ok, const char* field, const std::string& message) {
  if (!ok) throw InvalidParameterError(field, message);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

long long default_max_horizon(int m, int width, int height, double speed) {
  const double travel = std::ceil((width + height) / speed);
  return 50LL * m * static_cast<long long>(travel);
}

void validate_config(const EnvConfig& cfg) {
  require(cfg.n >= 1, "n", "n must be at least 1");
  require(cfg.m >= 1, "m", "m must be at least 1");
  require(cfg.width >= 1, "width", "width must be at least 1");
  require(cfg.height >= 1, "height", "height must be at least 1");
  require(cfg.exec_time >= 1, "exec_time", "exec_time must be at least 1");
  require(finite(cfg.speed) && cfg.speed > 0.0, "speed",
          "speed must be positive");
  require(finite(cfg.reward.r0), "r0", "r0 must be finite");
  require(finite(cfg.reward.eta), "eta", "eta must be finite");
  require(finite(cfg.reward.beta) && cfg.reward.beta > 0.0, "beta",
          "beta must be positive");
  require(finite(cfg.reward.alpha), "alpha", "alpha must be finite");
  require(finite(cfg.reward.lambda_step) && cfg.reward.lambda_step >= 0.0,
          "lambda_step", "lambda_step must be nonnegative");
  require(finite(cfg.origin.x) && cfg.origin.x >= 0.0 &&
              cfg.origin.x <= cfg.width,
          "origin_x", "origin_x must lie within [0, width]");
  require(finite(cfg.origin.y) && cfg.origin.y >= 0.0 &&
              cfg.origin.y <= cfg.height,
          "origin_y", "origin_y must lie within [0, height]");
  require(cfg.max_horizon >= 1, "max_horizon",
          "max_horizon must be at least 1");
}

EnvConfig make_config(int n, int m, int width, int height, int exec_time,
                      double speed, RewardParams reward, Vec2 origin,
                      long long max_horizon) {
  EnvConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.width = width;
  cfg.height = height;
  cfg.exec_time = exec_time;
  cfg.speed = speed;
  cfg.reward = reward;
  cfg.origin = origin;
  require(max_horizon >= 0, "max_horizon", "max_horizon must be nonnegative");
  if (max_horizon == 0) {
    require(width >= 1, "width", "width must be at least 1");
    require(height >= 1, "height", "height must be at least 1");
    require(std::isfinite(speed) && speed > 0.0, "speed",
            "speed must be positive");
    cfg.max_horizon = default_max_horizon(m, width, height, speed);
  } else {
    cfg.max_horizon = max_horizon;
  }
  validate_config(cfg);
  return cfg;
}

std::string exact_pow(std::uint64_t base, std::uint64_t exp) {
  // schoolbook multiply on base-1e9 limbs, least significant first
  std::vector<std::uint64_t> limbs{1};
  constexpr std::uint64_t kLimb = 1'000'000'000ULL;
  for (std::uint64_t i = 0; i < exp; ++i) {
    std::uint64_t carry = 0;
    for (auto& limb : limbs) {
      const unsigned __int128 v =
          static_cast<unsigned __int128>(limb) * base + carry;
      limb = static_cast<std::uint64_t>(v % kLimb);
      carry = static_cast<std::uint64_t>(v / kLimb);
    }
    while (carry != 0) {
      limbs.push_back(carry % kLimb);
      carry /= kLimb;
    }
    if (limbs.size() == 1 && limbs[0] == 0) break;  // base was 0
  }
  std::string out = std::to_string(limbs.back());
  for (auto it = limbs.rbegin() + 1; it != limbs.rend(); ++it) {
    std::string part = std::to_string(*it);
    out += std::string(9 - part.size(), '0') + part;
  }
  return out;
}

DerivedStats derived_quantities(const EnvConfig& cfg) {
  validate_config(cfg);
  DerivedStats d;
  d.task_density = static_cast<double>(cfg.m) /
                   (static_cast<double>(cfg.width) * cfg.height);
  d.tasks_per_agent = static_cast<double>(cfg.m) / cfg.n;
  d.choices_per_agent = cfg.m;
  d.joint_actions = exact_pow(static_cast<std::uint64_t>(cfg.m),
                              static_cast<std::uint64_t>(cfg.n));
  return d;
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> kPresets = [] {
    std::vector<Preset> list;
    auto add = [&list](const char* name, int n, int m, int w, int h) {
      list.push_back({name, make_config(n, m, w, h)});
    };
    add("3A-6T-5x3", 3, 6, 5, 3);
    add("3A-6T-10x6", 3, 6, 10, 6);
    add("3A-12T-10x6", 3, 12, 10, 6);
    add("5A-12T-10x6", 5, 12, 10, 6);
    add("5A-25T-25x15", 5, 25, 25, 15);
    add("5A-25T-50x30", 5, 25, 50, 30);
    add("5A-50T-50x30", 5, 50, 50, 30);
    add("5A-100T-50x30", 5, 100, 50, 30);
    add("9A-25T-50x30", 9, 25, 50, 30);
    return list;
  }();
  return kPresets;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> kNames = [] {
    std::vector<std::string> names;
    for (const auto& p : presets()) names.push_back(p.name);
    return names;
  }();
  return kNames;
}

bool is_preset(const std::string& name) {
  const auto& names = preset_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

const EnvConfig& preset_config(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p.config;
  }
  std::ostringstream msg;
  msg << "unknown preset '" << name << "'; valid presets:";
  for (const auto& p : presets()) msg << ' ' << p.name;
  throw UnknownPresetError(msg.str());
}

}  // namespace sta
