#include <benchmark/benchmark.h>

#include "iota/affordance/mask.hpp"
#include "iota/affordance/rules.hpp"
#include "iota/agents/learner.hpp"
#include "iota/agents/trainer.hpp"
#include "iota/ckf/ckf.hpp"
#include "iota/common/rng.hpp"
#include "iota/envs/environment.hpp"

using namespace iota;

namespace {

const char* kEnvs[] = {"mario", "pacman", "flappybirds", "taxidriver", "scararobot"};

std::unique_ptr<envs::Environment> make(int index) {
  return envs::make_environment(kEnvs[index], IOTA_RL_BENCH_ASSET_DIR);
}

affordance::RuleSet rules_of(const envs::Environment& env) {
  return affordance::load_ruleset(envs::rules_path(env.name(), IOTA_RL_BENCH_ASSET_DIR), env.action_space().names,
                                  *env.registry())
      .rules;
}

void BM_BuildCkf(benchmark::State& state) {
  auto env = make(static_cast<int>(state.range(0)));
  const auto frame = env->reset(1);
  const auto params = frame.token_params();
  for (auto _ : state) benchmark::DoNotOptimize(ckf::build_ckf(frame.elements, params));
  state.SetLabel(env->name());
}
BENCHMARK(BM_BuildCkf)->DenseRange(0, 4);

void BM_AffordanceMask(benchmark::State& state) {
  auto env = make(static_cast<int>(state.range(0)));
  const auto rules = rules_of(*env);
  const auto frame = env->reset(1);
  const auto params = frame.token_params();
  const auto grid = ckf::build_ckf(frame.elements, params);
  const auto under = ckf::build_underlay(frame.elements, params);
  for (auto _ : state) benchmark::DoNotOptimize(affordance::affordance_mask(grid, under, rules));
  state.SetLabel(env->name());
}
BENCHMARK(BM_AffordanceMask)->DenseRange(0, 4);

void BM_EnvStep(benchmark::State& state) {
  auto env = make(static_cast<int>(state.range(0)));
  const int n = env->action_space().n;
  Rng rng(3);
  env->reset(1);
  std::uint64_t episode = 1;
  for (auto _ : state) {
    if (env->terminal()) env->reset(++episode);
    benchmark::DoNotOptimize(env->step(static_cast<int>(rng.below(static_cast<std::uint64_t>(n)))));
  }
  state.SetLabel(env->name());
}
BENCHMARK(BM_EnvStep)->DenseRange(0, 4);

// One full agent step on taxidriver once the buffer is warm: observe,
// act, environment step and one mini-batch update.
void BM_TrainStep(benchmark::State& state) {
  const auto kind = agents::kAllAgents[static_cast<std::size_t>(state.range(0))];
  auto env = make(3);
  const auto rules = rules_of(*env);
  const int n_a = env->action_space().n;
  const bool masked = agents::is_iecr(kind);
  auto obs = agents::observe(env->reset(1), rules, masked, n_a);
  agents::Learner learner(kind, nn::Architecture{static_cast<int>(obs.state.size()), n_a, agents::head_of(kind)},
                          agents::AgentConfig{}, 1);
  Rng rng(2);
  std::uint64_t episode = 1;
  auto step = [&] {
    const auto sel = learner.act(obs.state, obs.mask, 0.5, rng);
    const auto res = env->step(sel.action);
    auto next = agents::observe(res.frame, rules, masked, n_a);
    learner.observe({obs.state, sel.action, res.reward, next.state, obs.mask, next.mask, res.terminal});
    obs = res.terminal ? agents::observe(env->reset(++episode), rules, masked, n_a) : std::move(next);
  };
  for (int i = 0; i < 64; ++i) step();
  for (auto _ : state) step();
  state.SetLabel(agents::to_string(kind));
}
BENCHMARK(BM_TrainStep)->DenseRange(0, 7)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
