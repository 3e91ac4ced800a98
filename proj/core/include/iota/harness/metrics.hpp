#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace iota::harness {

inline constexpr std::string_view kMetricsHeader =
    "run_id,agent,env,lambda,seed,unit,unit_index,avg_reward,epsilon,steps_total,wall_ms";

struct MetricsRow {
  std::string run_id;
  std::string agent;
  std::string env;
  double lambda = 0;
  std::uint64_t seed = 0;
  std::string unit;
  int unit_index = 0;
  double avg_reward = 0;
  double epsilon = 0;
  long steps_total = 0;
  long wall_ms = 0;
};

std::string format_row(const MetricsRow& row);
std::string format_metrics(const std::vector<MetricsRow>& rows);  // header + rows

// Parses a metrics CSV. A header that differs from kMetricsHeader throws
// ConfigError naming the first offending column; bad fields throw
// ParseError with the line number.
std::vector<MetricsRow> parse_metrics(std::string_view text);
std::vector<MetricsRow> load_metrics(const std::string& path);

// Aggregate of one (env, agent, lambda) cell across seeds.
struct SummaryCell {
  std::string env;
  std::string agent;
  double lambda = 0;
  int n_seeds = 0;
  int units = 0;
  int tail_units = 0;
  double full_mean = 0;
  double full_std = 0;
  double tail_mean = 0;
  double tail_std = 0;
};

// Number of final units in the tail window: ceil(25% of units), at least 1.
int tail_length(int units);

// Per run: mean of avg_reward over all units and over the tail window.
// Per cell: mean and sample standard deviation (n - 1; 0 for one seed) of
// the per-run values. Cells keep first-appearance order.
std::vector<SummaryCell> summarize(const std::vector<MetricsRow>& rows);

inline constexpr std::string_view kSummaryHeader =
    "env,agent,lambda,n_seeds,units,tail_units,full_mean,full_std,tail_mean,tail_std";
std::string format_summary_csv(const std::vector<SummaryCell>& cells);

// Human-readable table: one row per agent; one column per environment, or
// per lambda when the cells span several lambdas. Entries are
// "tail_mean ± tail_std".
std::string format_summary_table(const std::vector<SummaryCell>& cells);

// Writes through a temporary file in the same directory and renames it over
// `path`.
void write_atomic(const std::string& path, std::string_view content);

}  // namespace iota::harness
