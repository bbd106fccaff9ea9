#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sta/diagnostics.hpp"
#include "sta/errors.hpp"
#include "sta/harness.hpp"
#include "sta/io.hpp"
#include "sta/policies.hpp"
#include "sta/protocol.hpp"
#include "sta/scenario.hpp"

namespace {

std::string group_thousands(const std::string& digits) {
  std::string out;
  const std::size_t len = digits.size();
  for (std::size_t i = 0; i < len; ++i) {
    if (i > 0 && (len - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

std::string fixed(double value, int places) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", places, value);
  return buf;
}

// Two decimals, single trailing zero dropped: 2.40 -> 2.4, 2.78 stays.
std::string ratio_text(double value) {
  std::string out = fixed(value, 2);
  if (out.size() > 1 && out.back() == '0') out.pop_back();
  return out;
}

sta::EnvConfig resolve_env(const std::string& preset,
                           const std::string& config_path,
                           const std::string& fallback_preset = "") {
  if (!preset.empty()) return sta::preset_config(preset);
  if (!config_path.empty()) {
    return sta::config_from_text(sta::read_file(config_path));
  }
  if (!fallback_preset.empty()) return sta::preset_config(fallback_preset);
  throw sta::Error("choose an environment with --preset or --config");
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      seeds.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw sta::Error("--seeds wants comma-separated integers, got '" + item +
                       "'");
    }
  }
  if (seeds.empty()) throw sta::Error("--seeds is empty");
  return seeds;
}

void print_report(const sta::AggregateReport& report) {
  std::cout << "policy=" << report.policy
            << " seeds=" << report.seeds.size()
            << " episodes_per_seed=" << report.episodes_per_seed << "\n";
  for (const auto& name : sta::metric_names()) {
    const auto& agg = report.metrics.at(name);
    std::cout << "  " << std::left << std::setw(42) << name << std::right
              << sta::format_double(agg.mean) << " +/- "
              << sta::format_double(agg.ci95_halfwidth) << "\n";
  }
}

int cmd_presets() {
  std::cout << std::left << std::setw(16) << "name" << std::right
            << std::setw(7) << "agents" << std::setw(7) << "tasks"
            << std::setw(8) << "grid" << std::setw(9) << "density"
            << std::setw(13) << "tasks/agent" << std::setw(9) << "choices"
            << "  " << std::left << "joint assignments" << "\n";
  for (const auto& preset : sta::presets()) {
    const auto d = sta::derived_quantities(preset.config);
    const std::string grid = std::to_string(preset.config.width) + "x" +
                             std::to_string(preset.config.height);
    std::cout << std::left << std::setw(16) << preset.name << std::right
              << std::setw(7) << preset.config.n << std::setw(7)
              << preset.config.m << std::setw(8) << grid << std::setw(9)
              << fixed(d.task_density, 3) << std::setw(13)
              << ratio_text(d.tasks_per_agent) << std::setw(9)
              << d.choices_per_agent << "  " << std::left
              << group_thousands(d.joint_actions) << "\n";
  }
  return 0;
}

int cmd_run(const sta::EnvConfig& cfg, const std::string& policy,
            std::uint64_t seed, const std::string& out_path,
            const std::string& metrics_path) {
  const sta::EpisodeLog log = sta::run_episode(cfg, policy, seed);
  const sta::MetricsRecord metrics = sta::episode_metrics(log, cfg);

  std::cout << "reason=" << sta::terminal_reason_name(log.final.reason)
            << " t=" << log.final.t << " completed=" << log.final.completed
            << "/" << cfg.m
            << " episode_return=" << sta::format_double(log.episode_return)
            << "\n";
  for (const auto& name : sta::metric_names()) {
    std::cout << "  " << std::left << std::setw(42) << name << std::right
              << sta::format_double(sta::metric_value(metrics, name)) << "\n";
  }
  if (metrics.degenerate_denominators) {
    std::cout << "  (degenerate denominators: 0/0 reported as 0)\n";
  }

  if (!out_path.empty()) {
    sta::write_file(out_path, sta::episode_log_to_jsonl(log));
    std::cout << "wrote " << out_path << "\n";
  }
  if (!metrics_path.empty()) {
    sta::write_file(metrics_path, sta::metrics_to_csv({metrics}));
    std::cout << "wrote " << metrics_path << "\n";
  }
  return 0;
}

int cmd_eval(const sta::EnvConfig& cfg, const std::string& policy,
             const std::vector<std::uint64_t>& seeds, int episodes_per_seed,
             const std::string& out_path, const std::string& csv_path) {
  const sta::AggregateReport report =
      sta::evaluate(cfg, policy, seeds, episodes_per_seed);
  print_report(report);
  if (!out_path.empty()) {
    sta::write_file(out_path, sta::report_to_json(report));
    std::cout << "wrote " << out_path << "\n";
  }
  if (!csv_path.empty()) {
    sta::write_file(csv_path, sta::report_to_csv(report));
    std::cout << "wrote " << csv_path << "\n";
  }
  return 0;
}

int cmd_compare(const std::string& path_a, const std::string& path_b,
                const std::vector<std::string>& metrics, double alpha) {
  const sta::AggregateReport a = sta::report_from_json(sta::read_file(path_a));
  const sta::AggregateReport b = sta::report_from_json(sta::read_file(path_b));
  const std::vector<std::string>& selected =
      metrics.empty() ? sta::metric_names() : metrics;

  std::cout << std::left << std::setw(42) << "metric" << std::right
            << std::setw(14) << "a" << std::setw(14) << "b" << std::setw(11)
            << "direction" << std::setw(12) << "p" << "  verdict\n";
  for (const auto& name : selected) {
    const sta::ComparisonRow row = sta::scaling_comparison(a, b, name, alpha);
    const char* direction = row.welch.direction > 0   ? "increase"
                            : row.welch.direction < 0 ? "decrease"
                                                      : "tie";
    const char* verdict = row.no_change
                              ? "no-change"
                              : (row.welch.significant ? "significant"
                                                       : "not-significant");
    std::cout << std::left << std::setw(42) << name << std::right
              << std::setw(14) << fixed(row.mean_a, 6) << std::setw(14)
              << fixed(row.mean_b, 6) << std::setw(11) << direction
              << std::setw(12) << (row.no_change ? "-" : fixed(row.welch.p, 6))
              << "  " << verdict << "\n";
  }
  return 0;
}

int cmd_serve(const std::optional<sta::EnvConfig>& default_config,
              bool use_stdio, int port) {
  if (use_stdio) return sta::serve_stdio(default_config);
  sta::TcpServer server(default_config, port);
  std::cout << "listening on 127.0.0.1:" << server.port() << std::endl;
  server.run();
  return 0;
}

int cmd_bench(const sta::EnvConfig& cfg, const std::string& policy,
              long long min_steps, std::uint64_t seed) {
  const sta::BenchResult result =
      sta::benchmark_steps(cfg, policy, min_steps, seed);
  std::cout << "steps=" << result.steps
            << " seconds=" << fixed(result.seconds, 3)
            << " steps_per_second=" << fixed(result.steps_per_second, 1)
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"commitment-constrained spatial task allocation testbed"};
  app.require_subcommand(1);

  app.add_subcommand("presets", "list built-in scenarios and derived sizes");

  std::string run_preset, run_config, run_policy = "random_valid";
  std::string run_out, run_metrics;
  std::uint64_t run_seed = 0;
  auto* run = app.add_subcommand("run", "run one scripted episode");
  auto* run_preset_opt = run->add_option("--preset", run_preset, "preset name");
  run->add_option("--config", run_config, "config file path")
      ->excludes(run_preset_opt);
  run->add_option("--policy", run_policy, "scripted policy name");
  run->add_option("--seed", run_seed, "episode seed");
  run->add_option("--out", run_out, "write the episode log (jsonl)");
  run->add_option("--metrics-out", run_metrics, "write episode metrics (csv)");

  std::string eval_preset, eval_config, eval_policy = "random_valid";
  std::string eval_seeds, eval_out, eval_csv;
  int eval_num_seeds = 5, eval_episodes = 5;
  std::uint64_t eval_first_seed = 1;
  auto* eval = app.add_subcommand("eval", "evaluate a policy across seeds");
  auto* eval_preset_opt =
      eval->add_option("--preset", eval_preset, "preset name");
  eval->add_option("--config", eval_config, "config file path")
      ->excludes(eval_preset_opt);
  eval->add_option("--policy", eval_policy, "scripted policy name");
  eval->add_option("--seeds", eval_seeds, "comma-separated root seeds");
  eval->add_option("--num-seeds", eval_num_seeds,
                   "consecutive seed count (ignored with --seeds)");
  eval->add_option("--first-seed", eval_first_seed,
                   "first consecutive seed (ignored with --seeds)");
  eval->add_option("--episodes-per-seed", eval_episodes, "episodes per seed");
  eval->add_option("--out", eval_out, "write the evaluation report (json)");
  eval->add_option("--csv", eval_csv, "write per-seed metric means (csv)");

  std::string cmp_a, cmp_b;
  std::vector<std::string> cmp_metrics;
  double cmp_alpha = 0.05;
  auto* compare =
      app.add_subcommand("compare", "compare two evaluation reports");
  compare->add_option("--a", cmp_a, "first report (json)")->required();
  compare->add_option("--b", cmp_b, "second report (json)")->required();
  compare->add_option("--metric", cmp_metrics,
                      "metric to test (repeatable; default: all)");
  compare->add_option("--alpha", cmp_alpha, "significance level");

  std::string serve_preset, serve_config;
  bool serve_stdio_flag = false;
  int serve_port = -1;
  auto* serve = app.add_subcommand("serve", "speak the line protocol");
  auto* serve_preset_opt =
      serve->add_option("--preset", serve_preset, "default environment preset");
  serve->add_option("--config", serve_config, "default environment config file")
      ->excludes(serve_preset_opt);
  serve->add_flag("--stdio", serve_stdio_flag, "serve stdin/stdout (default)");
  serve->add_option("--port", serve_port,
                    "serve TCP on 127.0.0.1 (0 picks a free port)");

  std::string bench_preset, bench_config, bench_policy = "random_valid";
  long long bench_min_steps = 200000;
  std::uint64_t bench_seed = 0;
  auto* bench = app.add_subcommand("bench", "measure single-threaded step rate");
  auto* bench_preset_opt =
      bench->add_option("--preset", bench_preset, "preset name");
  bench->add_option("--config", bench_config, "config file path")
      ->excludes(bench_preset_opt);
  bench->add_option("--policy", bench_policy, "scripted policy name");
  bench->add_option("--min-steps", bench_min_steps, "minimum steps to time");
  bench->add_option("--seed", bench_seed, "first episode seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("presets")) return cmd_presets();
    if (app.got_subcommand(run)) {
      return cmd_run(resolve_env(run_preset, run_config), run_policy, run_seed,
                     run_out, run_metrics);
    }
    if (app.got_subcommand(eval)) {
      std::vector<std::uint64_t> seeds;
      if (!eval_seeds.empty()) {
        seeds = parse_seed_list(eval_seeds);
      } else {
        if (eval_num_seeds < 1) throw sta::Error("--num-seeds must be >= 1");
        for (int i = 0; i < eval_num_seeds; ++i) {
          seeds.push_back(eval_first_seed + static_cast<std::uint64_t>(i));
        }
      }
      return cmd_eval(resolve_env(eval_preset, eval_config), eval_policy,
                      seeds, eval_episodes, eval_out, eval_csv);
    }
    if (app.got_subcommand(compare)) {
      return cmd_compare(cmp_a, cmp_b, cmp_metrics, cmp_alpha);
    }
    if (app.got_subcommand(serve)) {
      std::optional<sta::EnvConfig> default_config;
      if (!serve_preset.empty() || !serve_config.empty()) {
        default_config = resolve_env(serve_preset, serve_config);
      }
      const bool use_stdio = serve_stdio_flag || serve_port < 0;
      if (serve_stdio_flag && serve_port >= 0) {
        throw sta::Error("--stdio and --port are mutually exclusive");
      }
      return cmd_serve(default_config, use_stdio, serve_port);
    }
    if (app.got_subcommand(bench)) {
      return cmd_bench(
          resolve_env(bench_preset, bench_config, "5A-25T-25x15"),
          bench_policy, bench_min_steps, bench_seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
