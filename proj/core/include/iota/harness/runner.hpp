#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "iota/agents/trainer.hpp"
#include "iota/harness/experiment_spec.hpp"
#include "iota/harness/metrics.hpp"

namespace iota::harness {

struct Cell;

struct RunOptions {
  int jobs = 1;
  std::uint64_t seed_offset = 0;
  std::string asset_dir;  // empty = default
  // Called after every unit of every cell, from the worker thread that runs
  // the cell.
  std::function<void(const Cell&, const agents::UnitMetrics&)> on_unit;
};

struct Cell {
  agents::AgentKind agent = agents::AgentKind::dqn;
  double lambda = 0;  // 0 for baselines
  std::uint64_t seed = 0;
  std::string run_id;
};

// Cells in output order: agents, then lambdas, then seeds. Stage-1/2 specs
// train IECR agents at `lambda` and baselines at 0; a lambda sweep accepts
// only IECR agents and crosses them with `lambdas`.
std::vector<Cell> expand_cells(const ExperimentSpec& spec, std::uint64_t seed_offset = 0);

struct ExperimentResult {
  std::vector<MetricsRow> rows;
  std::vector<SummaryCell> summary;
  std::string output_dir;
};

// Validates assets, runs every cell (up to `jobs` at once) and writes
//   <output>/runs/<run_id>.csv, <output>/metrics.csv,
//   <output>/summary.csv, <output>/summary.txt
// atomically. Missing assets throw ConfigError before any training.
ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options = {});

}  // namespace iota::harness
