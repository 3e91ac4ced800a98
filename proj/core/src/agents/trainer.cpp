#include "iota/agents/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>

#include <spdlog/spdlog.h>

#include "iota/affordance/mask.hpp"
#include "iota/common/error.hpp"
#include "iota/nn/checkpoint.hpp"

namespace iota::agents {

std::string to_string(Schedule s) { return s == Schedule::episodes ? "episode" : "epoch"; }

Observation observe(const envs::EnvFrame& frame, const affordance::RuleSet& rules, bool use_mask, int n_actions) {
  const auto params = frame.token_params();
  Observation obs;
  obs.state = ckf::build_ckf(frame.elements, params);
  obs.underlay = ckf::build_underlay(frame.elements, params);
  obs.mask = use_mask ? affordance::affordance_mask(obs.state, obs.underlay, rules)
                      : affordance::AffordanceMask::all_ones(n_actions);
  return obs;
}

double epsilon_after(const AgentConfig& config, Schedule schedule, int units) {
  const double decay = schedule == Schedule::episodes ? config.epsilon_decay_episode : config.epsilon_decay_epoch;
  return std::clamp(config.epsilon_max - decay * units, config.epsilon_min, config.epsilon_max);
}

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(bool on) : on_(on), start_(std::chrono::steady_clock::now()) {}
  long elapsed_ms() const {
    if (!on_) return 0;
    return static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count());
  }

 private:
  bool on_;
  std::chrono::steady_clock::time_point start_;
};

void check_rules(const envs::Environment& env, const affordance::RuleSet& rules, AgentKind kind) {
  if (is_iecr(kind) && rules.n_actions() != env.action_space().n) {
    throw ConfigError("rule set has " + std::to_string(rules.n_actions()) + " actions but " + env.name() + " has " +
                      std::to_string(env.action_space().n));
  }
}

}  // namespace

UnitMetrics evaluate(const Learner& learner, envs::Environment& env, const affordance::RuleSet& rules,
                     std::uint64_t seed) {
  const bool masked = is_iecr(learner.kind());
  const int n_a = env.action_space().n;
  Rng rng(derive_seed(seed, "eval.policy"));
  auto obs = observe(env.reset(seed), rules, masked, n_a);
  UnitMetrics m;
  while (true) {
    const auto sel = learner.act(obs.state, obs.mask, 0.0, rng);
    const auto res = env.step(sel.action);
    m.avg_reward += res.reward;
    if (res.reward > 0) ++m.positive_rewards;
    ++m.episode_steps;
    if (res.terminal) {
      m.outcome = res.terminal_kind;
      break;
    }
    obs = observe(res.frame, rules, masked, n_a);
  }
  return m;
}

RunResult train(envs::Environment& env, const affordance::RuleSet& rules, const TrainConfig& config,
                const TrainHooks& hooks) {
  check_rules(env, rules, config.kind);
  if (config.units <= 0 || config.steps_per_epoch <= 0) throw ConfigError("units and steps_per_epoch must be positive");
  const bool masked = is_iecr(config.kind);
  const int n_a = env.action_space().n;
  const auto params = env.token_params();

  nn::Architecture arch;
  arch.inputs = params.rows() * params.cols();
  arch.n_actions = n_a;
  arch.head = head_of(config.kind);
  arch.hidden = config.agent.hidden;
  arch.stream_hidden = config.agent.stream_hidden;
  Learner learner(config.kind, arch, config.agent, config.seed);
  Rng policy_rng(derive_seed(config.seed, "policy"));

  RunResult result;
  long episode = 0;
  auto obs = observe(env.reset(derive_seed(config.seed, "episode", 0)), rules, masked, n_a);
  double episode_return = 0;
  int episode_positive = 0;

  // One environment + learning step; returns the terminal kind (none while
  // the episode continues) and starts the next episode when it ends.
  auto step_once = [&](double epsilon) {
    const auto sel = learner.act(obs.state, obs.mask, epsilon, policy_rng);
    if (sel.fallback) ++result.fallbacks;
    const auto res = env.step(sel.action);
    auto next = observe(res.frame, rules, masked, n_a);
    if (hooks.on_step) {
      StepRecord rec;
      rec.state = &obs.state;
      rec.underlay = &obs.underlay;
      rec.mask = &obs.mask;
      rec.selection = sel;
      rec.reward = res.reward;
      rec.terminal = res.terminal;
      hooks.on_step(rec);
    }
    episode_return += res.reward;
    if (res.reward > 0) ++episode_positive;
    Transition t{obs.state, sel.action, res.reward, next.state, obs.mask, next.mask, res.terminal};
    learner.observe(std::move(t));
    ++result.steps;
    if (res.terminal) {
      ++episode;
      obs = observe(env.reset(derive_seed(config.seed, "episode", static_cast<std::uint64_t>(episode))), rules,
                    masked, n_a);
    } else {
      obs = std::move(next);
    }
    return res.terminal ? res.terminal_kind : envs::TerminalKind::none;
  };

  const Stopwatch clock(config.timing);
  for (int unit = 0; unit < config.units; ++unit) {
    const double epsilon = epsilon_after(config.agent, config.schedule, unit);
    UnitMetrics m;
    if (config.schedule == Schedule::episodes) {
      episode_return = 0;
      episode_positive = 0;
      int steps = 0;
      auto kind = envs::TerminalKind::none;
      while (kind == envs::TerminalKind::none) {
        kind = step_once(epsilon);
        ++steps;
      }
      m.avg_reward = episode_return;
      m.positive_rewards = episode_positive;
      m.outcome = kind;
      m.episode_steps = steps;
    } else {
      for (int k = 0; k < config.steps_per_epoch; ++k) step_once(epsilon);
      auto eval_env = env.clone();
      m = evaluate(learner, *eval_env, rules, derive_seed(config.seed, "eval", static_cast<std::uint64_t>(unit)));
      const bool due = config.checkpoint_every > 0 && (unit + 1) % config.checkpoint_every == 0;
      if (due && !config.checkpoint_dir.empty()) {
        std::filesystem::create_directories(config.checkpoint_dir);
        const auto path = std::filesystem::path(config.checkpoint_dir) /
                          ((config.run_id.empty() ? std::string("run") : config.run_id) + "-epoch" +
                           std::to_string(unit + 1) + ".ckpt");
        nn::save_checkpoint(learner.main(), path.string());
      }
    }
    m.unit_index = unit + 1;
    m.epsilon = epsilon;
    m.steps_total = result.steps;
    m.wall_ms = clock.elapsed_ms();
    if (hooks.on_unit) hooks.on_unit(m);
    result.units.push_back(m);
  }
  if (result.fallbacks > 0) {
    spdlog::info("{}: {} all-zero-mask fallbacks in {} steps", config.run_id, result.fallbacks, result.steps);
  }
  return result;
}

}  // namespace iota::agents
