#include "sta/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "json_convert.hpp"
#include "sta/errors.hpp"

using json = nlohmann::json;

namespace sta {

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string terminal_reason_name(TerminalReason reason) {
  switch (reason) {
    case TerminalReason::kAllCompleted:
      return "all_completed";
    case TerminalReason::kHorizon:
      return "horizon";
    case TerminalReason::kNone:
      break;
  }
  return "none";
}

TerminalReason terminal_reason_from_name(const std::string& name) {
  if (name == "all_completed") return TerminalReason::kAllCompleted;
  if (name == "horizon") return TerminalReason::kHorizon;
  if (name == "none") return TerminalReason::kNone;
  throw Error("unknown terminal reason '" + name + "'");
}

// --- config text -----------------------------------------------------------

std::string config_to_text(const EnvConfig& cfg) {
  std::ostringstream out;
  out << "# task-allocation environment config v1\n";
  out << "n = " << cfg.n << "\n";
  out << "m = " << cfg.m << "\n";
  out << "width = " << cfg.width << "\n";
  out << "height = " << cfg.height << "\n";
  out << "exec_time = " << cfg.exec_time << "\n";
  out << "speed = " << format_double(cfg.speed) << "\n";
  out << "r0 = " << format_double(cfg.reward.r0) << "\n";
  out << "eta = " << format_double(cfg.reward.eta) << "\n";
  out << "beta = " << format_double(cfg.reward.beta) << "\n";
  out << "alpha = " << format_double(cfg.reward.alpha) << "\n";
  out << "lambda_step = " << format_double(cfg.reward.lambda_step) << "\n";
  out << "origin_x = " << format_double(cfg.origin.x) << "\n";
  out << "origin_y = " << format_double(cfg.origin.y) << "\n";
  out << "max_horizon = " << cfg.max_horizon << "\n";
  return out.str();
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

long long parse_int_field(const std::string& key, const std::string& value) {
  long long out = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
    throw InvalidParameterError(key, "config key '" + key +
                                         "' needs an integer, got '" + value +
                                         "'");
  }
  return out;
}

double parse_double_field(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double out = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return out;
  } catch (const std::exception&) {
    throw InvalidParameterError(
        key, "config key '" + key + "' needs a number, got '" + value + "'");
  }
}

}  // namespace

EnvConfig config_from_text(const std::string& text) {
  EnvConfig cfg;
  bool has_n = false, has_m = false, has_width = false, has_height = false;

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidParameterError(line, "config line '" + line +
                                            "' is not 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "n") {
      cfg.n = static_cast<int>(parse_int_field(key, value));
      has_n = true;
    } else if (key == "m") {
      cfg.m = static_cast<int>(parse_int_field(key, value));
      has_m = true;
    } else if (key == "width") {
      cfg.width = static_cast<int>(parse_int_field(key, value));
      has_width = true;
    } else if (key == "height") {
      cfg.height = static_cast<int>(parse_int_field(key, value));
      has_height = true;
    } else if (key == "exec_time") {
      cfg.exec_time = static_cast<int>(parse_int_field(key, value));
    } else if (key == "speed") {
      cfg.speed = parse_double_field(key, value);
    } else if (key == "r0") {
      cfg.reward.r0 = parse_double_field(key, value);
    } else if (key == "eta") {
      cfg.reward.eta = parse_double_field(key, value);
    } else if (key == "beta") {
      cfg.reward.beta = parse_double_field(key, value);
    } else if (key == "alpha") {
      cfg.reward.alpha = parse_double_field(key, value);
    } else if (key == "lambda_step") {
      cfg.reward.lambda_step = parse_double_field(key, value);
    } else if (key == "origin_x") {
      cfg.origin.x = parse_double_field(key, value);
    } else if (key == "origin_y") {
      cfg.origin.y = parse_double_field(key, value);
    } else if (key == "max_horizon") {
      cfg.max_horizon = parse_int_field(key, value);
    } else {
      throw InvalidParameterError(key, "unknown config key '" + key + "'");
    }
  }
  if (!has_n) throw InvalidParameterError("n", "config is missing 'n'");
  if (!has_m) throw InvalidParameterError("m", "config is missing 'm'");
  if (!has_width) throw InvalidParameterError("width", "config is missing 'width'");
  if (!has_height) {
    throw InvalidParameterError("height", "config is missing 'height'");
  }
  if (cfg.max_horizon == 0) {
    cfg.max_horizon =
        default_max_horizon(cfg.m, cfg.width, cfg.height, cfg.speed);
  }
  validate_config(cfg);
  return cfg;
}

EnvConfig load_config_source(const std::string& source) {
  if (is_preset(source)) return preset_config(source);
  return config_from_text(read_file(source));
}

// --- episode logs ----------------------------------------------------------

using detail::config_from_json;
using detail::config_to_json;
using detail::conflicts_from_json;
using detail::conflicts_to_json;

std::string episode_log_to_jsonl(const EpisodeLog& log) {
  std::ostringstream out;
  out << json{{"kind", "header"},
              {"format", "episode-v1"},
              {"config", config_to_json(log.config)},
              {"policy", log.policy},
              {"seed", log.seed}}
             .dump()
      << "\n";
  for (const StepRecord& step : log.steps) {
    out << json{{"kind", "step"},
                {"t", step.t},
                {"selections", step.selections},
                {"submitted", step.submitted_actions},
                {"final", step.final_actions},
                {"conflicts", conflicts_to_json(step.conflicts)},
                {"forced_idle_count", step.forced_idle_count},
                {"decision_active", step.decision_active_count},
                {"completions", step.completions_count},
                {"team_reward", step.team_reward}}
               .dump()
        << "\n";
  }
  out << json{{"kind", "end"},
              {"reason", terminal_reason_name(log.final.reason)},
              {"t", log.final.t},
              {"completed", log.final.completed},
              {"episode_return", log.episode_return}}
             .dump()
      << "\n";
  return out.str();
}

EpisodeLog episode_log_from_jsonl(const std::string& text) {
  EpisodeLog log;
  bool saw_header = false;
  bool saw_end = false;

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(std::string("episode log: bad json line: ") + e.what());
    }
    const std::string kind = j.value("kind", "");
    try {
      if (kind == "header") {
        log.config = config_from_json(j.at("config"));
        log.policy = j.value("policy", "");
        log.seed = j.at("seed").get<std::uint64_t>();
        saw_header = true;
      } else if (kind == "step") {
        StepRecord rec;
        rec.t = j.at("t").get<long long>();
        rec.selections = j.at("selections").get<std::vector<int>>();
        rec.submitted_actions = j.at("submitted").get<std::vector<int>>();
        rec.final_actions = j.at("final").get<std::vector<int>>();
        rec.conflicts = conflicts_from_json(j.at("conflicts"));
        rec.forced_idle_count = j.at("forced_idle_count").get<int>();
        rec.decision_active_count = j.at("decision_active").get<int>();
        rec.completions_count = j.at("completions").get<int>();
        rec.team_reward = j.at("team_reward").get<double>();
        log.steps.push_back(std::move(rec));
      } else if (kind == "end") {
        log.final.reason =
            terminal_reason_from_name(j.at("reason").get<std::string>());
        log.final.t = j.at("t").get<long long>();
        log.final.completed = j.at("completed").get<int>();
        log.episode_return = j.at("episode_return").get<double>();
        saw_end = true;
      } else {
        throw Error("episode log: unknown line kind '" + kind + "'");
      }
    } catch (const json::exception& e) {
      throw Error("episode log: malformed '" + kind + "' line: " + e.what());
    }
  }
  if (!saw_header || !saw_end) {
    throw Error("episode log: missing header or end line");
  }
  return log;
}

// --- metrics CSV -----------------------------------------------------------

std::string metrics_csv_header() {
  std::string out;
  for (const auto& name : metric_names()) {
    if (!out.empty()) out += ',';
    out += name;
  }
  return out + ",degenerate_denominators";
}

std::string metrics_csv_row(const MetricsRecord& rec) {
  std::string out;
  for (const auto& name : metric_names()) {
    if (!out.empty()) out += ',';
    if (name == "total_conflicts") {
      out += std::to_string(rec.total_conflicts);
    } else if (name == "horizon") {
      out += std::to_string(rec.horizon);
    } else {
      out += format_double(metric_value(rec, name));
    }
  }
  out += rec.degenerate_denominators ? ",1" : ",0";
  return out;
}

std::string metrics_to_csv(const std::vector<MetricsRecord>& records) {
  std::string out = metrics_csv_header() + "\n";
  for (const auto& rec : records) out += metrics_csv_row(rec) + "\n";
  return out;
}

// --- evaluation reports ----------------------------------------------------

std::string report_to_json(const AggregateReport& report) {
  json metrics = json::object();
  for (const auto& name : metric_names()) {
    const auto it = report.metrics.find(name);
    if (it == report.metrics.end()) continue;
    metrics[name] = json{{"mean", it->second.mean},
                         {"ci95_halfwidth", it->second.ci95_halfwidth},
                         {"per_seed", it->second.per_seed}};
  }
  const json j{{"kind", "report"},
               {"format", "report-v1"},
               {"config", config_to_json(report.config)},
               {"policy", report.policy},
               {"seeds", report.seeds},
               {"episodes_per_seed", report.episodes_per_seed},
               {"metrics", metrics}};
  return j.dump(2) + "\n";
}

AggregateReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("report: bad json: ") + e.what());
  }
  AggregateReport report;
  try {
    report.config = config_from_json(j.at("config"));
    report.policy = j.value("policy", "");
    report.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    report.episodes_per_seed = j.at("episodes_per_seed").get<int>();
    for (const auto& [name, entry] : j.at("metrics").items()) {
      MetricAggregate agg;
      agg.mean = entry.at("mean").get<double>();
      agg.ci95_halfwidth = entry.at("ci95_halfwidth").get<double>();
      agg.per_seed = entry.at("per_seed").get<std::vector<double>>();
      report.metrics.emplace(name, std::move(agg));
    }
  } catch (const json::exception& e) {
    throw Error(std::string("report: malformed: ") + e.what());
  }
  return report;
}

std::string report_to_csv(const AggregateReport& report) {
  std::string out = "seed";
  for (const auto& name : metric_names()) out += "," + name;
  out += "\n";
  for (std::size_t si = 0; si < report.seeds.size(); ++si) {
    out += std::to_string(report.seeds[si]);
    for (const auto& name : metric_names()) {
      out += "," + format_double(report.metrics.at(name).per_seed[si]);
    }
    out += "\n";
  }
  out += "mean";
  for (const auto& name : metric_names()) {
    out += "," + format_double(report.metrics.at(name).mean);
  }
  out += "\nci95_halfwidth";
  for (const auto& name : metric_names()) {
    out += "," + format_double(report.metrics.at(name).ci95_halfwidth);
  }
  return out + "\n";
}

// --- files ------------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace sta
