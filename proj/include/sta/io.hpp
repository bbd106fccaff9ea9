#pragma once

#include <string>
#include <vector>

#include "sta/harness.hpp"

// File formats; see docs/formats.md for the full schemas. All writers emit
// deterministic bytes: fixed field order, shortest round-trip doubles.

namespace sta {

// Flat "key = value" config text, one field per line, '#' comments.
std::string config_to_text(const EnvConfig& cfg);
EnvConfig config_from_text(const std::string& text);

// Accepts a preset name or a path to a config file.
EnvConfig load_config_source(const std::string& source);

// Episode logs: one JSON object per line (header, steps, end).
std::string episode_log_to_jsonl(const EpisodeLog& log);
EpisodeLog episode_log_from_jsonl(const std::string& text);

// MetricsRecord rows; column order is metric_names() plus
// degenerate_denominators.
std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsRecord& rec);
std::string metrics_to_csv(const std::vector<MetricsRecord>& records);

// Evaluation reports.
std::string report_to_json(const AggregateReport& report);
AggregateReport report_from_json(const std::string& text);
// Rows per seed (per-seed metric means) plus "mean" and "ci95_halfwidth"
// summary rows.
std::string report_to_csv(const AggregateReport& report);

std::string terminal_reason_name(TerminalReason reason);
TerminalReason terminal_reason_from_name(const std::string& name);

// Shortest round-trip decimal form of a double (to_chars).
std::string format_double(double value);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace sta
