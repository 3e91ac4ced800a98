#include "iota/harness/runner.hpp"

#include <atomic>
#include <exception>
#include <filesystem>
#include <mutex>
#include <thread>

#include <spdlog/spdlog.h>

#include "iota/affordance/rules.hpp"
#include "iota/common/error.hpp"
#include "iota/envs/environment.hpp"

namespace iota::harness {

namespace fs = std::filesystem;

std::vector<Cell> expand_cells(const ExperimentSpec& spec, std::uint64_t seed_offset) {
  std::vector<Cell> cells;
  for (auto kind : spec.agents) {
    std::vector<double> lambdas;
    if (!agents::is_iecr(kind)) {
      if (spec.stage == Stage::lambda_sweep) throw ConfigError("lambda-sweep runs IECR agents only");
      lambdas = {0.0};
    } else if (spec.stage == Stage::lambda_sweep) {
      lambdas = spec.lambdas;
    } else {
      lambdas = {spec.lambda};
    }
    for (double lambda : lambdas) {
      for (auto base : spec.seeds) {
        Cell c;
        c.agent = kind;
        c.lambda = lambda;
        c.seed = base + seed_offset;
        c.run_id = spec.env + "-" + agents::to_string(kind) + "-l" + format_real(lambda) + "-s" + std::to_string(c.seed);
        cells.push_back(c);
      }
    }
  }
  return cells;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
  const auto cells = expand_cells(spec, options.seed_offset);

  // Fail fast on assets before any training starts.
  const auto layout_file = spec.layout_file(options.asset_dir);
  const auto rules_file = spec.rules_file(options.asset_dir);
  if (!fs::exists(layout_file)) throw ConfigError("layout not found: " + layout_file);
  const auto layout = envs::load_layout(layout_file);
  if (layout.name != spec.env) {
    throw ConfigError("layout '" + layout_file + "' is for '" + layout.name + "', config says '" + spec.env + "'");
  }
  const auto probe = envs::make_environment(layout);
  affordance::RuleSet rules(probe->action_space().n, {});
  bool any_iecr = false;
  for (const auto& c : cells) any_iecr = any_iecr || agents::is_iecr(c.agent);
  if (any_iecr) {
    if (!fs::exists(rules_file)) throw ConfigError("rules not found: " + rules_file);
    auto parsed = affordance::load_ruleset(rules_file, probe->action_space().names, *probe->registry());
    for (const auto& w : parsed.warnings) spdlog::warn("{}: {}", rules_file, w);
    rules = std::move(parsed.rules);
  }

  const auto out_dir = spec.output_dir();
  fs::create_directories(fs::path(out_dir) / "runs");
  const auto unit_name = spec.stage == Stage::episodes ? agents::Schedule::episodes : agents::Schedule::epochs;

  std::vector<std::vector<MetricsRow>> per_cell(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    while (true) {
      const auto i = next.fetch_add(1);
      if (i >= cells.size()) return;
      {
        std::lock_guard lock(error_mutex);
        if (error) return;
      }
      try {
        const auto& cell = cells[i];
        auto env = envs::make_environment(layout);
        agents::TrainConfig tc;
        tc.kind = cell.agent;
        tc.agent = spec.agent;
        tc.agent.lambda = cell.lambda;
        tc.schedule = unit_name;
        tc.units = spec.units();
        tc.steps_per_epoch = spec.steps_per_epoch;
        tc.seed = cell.seed;
        tc.timing = spec.timing;
        tc.checkpoint_every = spec.checkpoint_every;
        tc.checkpoint_dir = spec.stage == Stage::episodes ? "" : (fs::path(out_dir) / "checkpoints").string();
        tc.run_id = cell.run_id;
        spdlog::info("starting {}", cell.run_id);
        agents::TrainHooks hooks;
        if (options.on_unit) hooks.on_unit = [&](const agents::UnitMetrics& u) { options.on_unit(cell, u); };
        const auto result = agents::train(*env, rules, tc, hooks);
        auto& rows = per_cell[i];
        for (const auto& u : result.units) {
          MetricsRow r;
          r.run_id = cell.run_id;
          r.agent = agents::to_string(cell.agent);
          r.env = spec.env;
          r.lambda = cell.lambda;
          r.seed = cell.seed;
          r.unit = agents::to_string(unit_name);
          r.unit_index = u.unit_index;
          r.avg_reward = u.avg_reward;
          r.epsilon = u.epsilon;
          r.steps_total = u.steps_total;
          r.wall_ms = u.wall_ms;
          rows.push_back(r);
        }
        write_atomic((fs::path(out_dir) / "runs" / (cell.run_id + ".csv")).string(), format_metrics(rows));
        spdlog::info("finished {}", cell.run_id);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };

  const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(cells.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  ExperimentResult result;
  result.output_dir = out_dir;
  for (auto& rows : per_cell) result.rows.insert(result.rows.end(), rows.begin(), rows.end());
  result.summary = summarize(result.rows);
  write_atomic((fs::path(out_dir) / "metrics.csv").string(), format_metrics(result.rows));
  write_atomic((fs::path(out_dir) / "summary.csv").string(), format_summary_csv(result.summary));
  write_atomic((fs::path(out_dir) / "summary.txt").string(), format_summary_table(result.summary));
  return result;
}

}  // namespace iota::harness
