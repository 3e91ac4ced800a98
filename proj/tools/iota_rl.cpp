// iota-rl command line: training, lambda sweeps, curve export and debugging
// helpers for environments and CKFs.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "iota/affordance/mask.hpp"
#include "iota/affordance/rules.hpp"
#include "iota/ckf/ckf.hpp"
#include "iota/common/error.hpp"
#include "iota/common/log.hpp"
#include "iota/common/rng.hpp"
#include "iota/envs/environment.hpp"
#include "iota/harness/curves.hpp"
#include "iota/harness/runner.hpp"

namespace {

constexpr int kConfigFailure = 1;
constexpr int kRuntimeFailure = 2;

int run_train(const std::string& config, int jobs, std::uint64_t seed_offset, const std::string& assets, bool sweep) {
  auto spec = iota::harness::load_spec(config);
  if (sweep) spec.stage = iota::harness::Stage::lambda_sweep;
  iota::harness::RunOptions options;
  options.jobs = jobs;
  options.seed_offset = seed_offset;
  options.asset_dir = assets;
  const auto result = iota::harness::run_experiment(spec, options);
  std::cout << iota::harness::format_summary_table(result.summary);
  std::cout << "wrote " << result.rows.size() << " metric rows to " << result.output_dir << "\n";
  return 0;
}

int run_play(const std::string& name, std::uint64_t seed, const std::string& policy, const std::string& assets,
             bool verbose) {
  auto env = iota::envs::make_environment(name, assets.empty() ? iota::envs::default_asset_dir() : assets);
  const auto space = env->action_space();
  iota::Rng rng(iota::derive_seed(seed, "play"));
  env->reset(seed);
  double total = 0;
  iota::envs::StepResult res;
  while (!env->terminal()) {
    const int action = policy == "scripted" ? env->scripted_action()
                                            : static_cast<int>(rng.below(static_cast<std::uint64_t>(space.n)));
    res = env->step(action);
    total += res.reward;
    if (verbose) {
      std::cout << fmt::format("{:5d} {:<6} {:+g}\n", env->steps(), space.names[static_cast<std::size_t>(action)],
                               res.reward);
    }
  }
  std::cout << fmt::format("{} seed={} policy={} steps={} return={} outcome={}\n", name, seed, policy, env->steps(),
                           total, iota::envs::to_string(res.terminal_kind));
  return 0;
}

int run_dump(const std::string& name, std::uint64_t seed, int steps, const std::string& assets, bool mask) {
  const auto dir = assets.empty() ? iota::envs::default_asset_dir() : assets;
  auto env = iota::envs::make_environment(name, dir);
  auto frame = env->reset(seed);
  for (int i = 0; i < steps && !env->terminal(); ++i) frame = env->step(env->scripted_action()).frame;
  const auto params = frame.token_params();
  const auto grid = iota::ckf::build_ckf(frame.elements, params);
  std::cout << iota::ckf::dump(grid);
  if (mask) {
    const auto space = env->action_space();
    const auto rules = iota::affordance::load_ruleset(iota::envs::rules_path(name, dir), space.names, *env->registry());
    const auto m = iota::affordance::affordance_mask(grid, iota::ckf::build_underlay(frame.elements, params), rules.rules);
    std::cout << "mask:";
    for (int a = 0; a < space.n; ++a) std::cout << ' ' << space.names[static_cast<std::size_t>(a)] << '=' << m.allowed(a);
    std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  iota::log::init_from_env();
  CLI::App app{"IECR deep reinforcement learning workbench"};
  app.require_subcommand(1);
  std::string assets;
  app.add_option("--assets", assets, "Asset directory (layouts/, rules/); defaults to IOTA_RL_ASSETS or the build tree");

  std::string config;
  int jobs = 1;
  std::uint64_t seed_offset = 0;
  auto* train = app.add_subcommand("train", "Run every (agent, lambda, seed) cell of a config");
  train->add_option("--config", config, "Experiment config file")->required();
  train->add_option("--jobs", jobs, "Cells trained in parallel")->check(CLI::PositiveNumber);
  train->add_option("--seed-offset", seed_offset, "Added to every seed in the config");

  auto* sweep = app.add_subcommand("sweep-lambda", "Cross the IECR agents of a config with its lambdas");
  sweep->add_option("--config", config, "Experiment config file")->required();
  sweep->add_option("--jobs", jobs, "Cells trained in parallel")->check(CLI::PositiveNumber);
  sweep->add_option("--seed-offset", seed_offset, "Added to every seed in the config");

  std::string in_csv, out_dir;
  int window = 10;
  auto* curves = app.add_subcommand("export-curves", "Moving-average curves (CSV + SVG) from a metrics CSV");
  curves->add_option("--in", in_csv, "metrics.csv")->required();
  curves->add_option("--window", window, "Trailing moving-average window")->check(CLI::PositiveNumber);
  curves->add_option("--out", out_dir, "Output directory")->required();

  std::string env_name, policy = "random";
  std::uint64_t seed = 0;
  bool verbose = false;
  auto* envs_cmd = app.add_subcommand("envs", "Environment helpers");
  envs_cmd->require_subcommand(1);
  auto* play = envs_cmd->add_subcommand("play", "Play one episode");
  play->add_option("name", env_name, "Environment")->required()->check(CLI::IsMember(iota::envs::environment_names()));
  play->add_option("--seed", seed, "Reset seed");
  play->add_option("--policy", policy, "random or scripted")->check(CLI::IsMember({"random", "scripted"}));
  play->add_flag("-v,--verbose", verbose, "Print every step");

  int steps = 0;
  bool with_mask = false;
  auto* ckf_cmd = app.add_subcommand("ckf", "CKF helpers");
  ckf_cmd->require_subcommand(1);
  auto* dump = ckf_cmd->add_subcommand("dump", "Print the CKF of an environment state");
  dump->add_option("--env", env_name, "Environment")->required()->check(CLI::IsMember(iota::envs::environment_names()));
  dump->add_option("--seed", seed, "Reset seed");
  dump->add_option("--steps", steps, "Scripted steps before dumping")->check(CLI::NonNegativeNumber);
  dump->add_flag("--mask", with_mask, "Also print the affordance mask");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigFailure;
  }

  try {
    if (*train) return run_train(config, jobs, seed_offset, assets, false);
    if (*sweep) return run_train(config, jobs, seed_offset, assets, true);
    if (*curves) {
      for (const auto& f : iota::harness::export_curves(in_csv, window, out_dir)) std::cout << "wrote " << f << '\n';
      return 0;
    }
    if (*play) return run_play(env_name, seed, policy, assets, verbose);
    if (*dump) return run_dump(env_name, seed, steps, assets, with_mask);
  } catch (const iota::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const iota::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kRuntimeFailure;
}
