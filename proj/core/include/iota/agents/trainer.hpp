#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "iota/affordance/rules.hpp"
#include "iota/agents/learner.hpp"
#include "iota/envs/environment.hpp"

namespace iota::agents {

enum class Schedule { episodes, epochs };

std::string to_string(Schedule s);  // "episode" / "epoch"

inline constexpr int kStepsPerEpoch = 400;

struct TrainConfig {
  AgentKind kind = AgentKind::dqn;
  AgentConfig agent;
  Schedule schedule = Schedule::epochs;
  int units = 200;  // episodes or epochs
  int steps_per_epoch = kStepsPerEpoch;
  std::uint64_t seed = 0;
  bool timing = false;
  int checkpoint_every = 50;   // epochs; 0 disables
  std::string checkpoint_dir;  // empty disables
  std::string run_id;
};

struct UnitMetrics {
  int unit_index = 0;
  double avg_reward = 0;  // episode return (training episode or greedy evaluation)
  double epsilon = 0;     // value used during the unit
  long steps_total = 0;   // training steps so far
  long wall_ms = 0;       // 0 unless timing is on
  int positive_rewards = 0;  // reward events > 0 in the measured episode
  envs::TerminalKind outcome = envs::TerminalKind::none;
  int episode_steps = 0;
};

// Everything the agent saw and did on one training step.
struct StepRecord {
  const ckf::Ckf* state = nullptr;
  const ckf::Ckf* underlay = nullptr;
  const affordance::AffordanceMask* mask = nullptr;
  Selection selection;
  double reward = 0;
  bool terminal = false;
};

struct TrainHooks {
  std::function<void(const StepRecord&)> on_step;
  std::function<void(const UnitMetrics&)> on_unit;
};

struct RunResult {
  std::vector<UnitMetrics> units;
  long steps = 0;
  long fallbacks = 0;
};

// Current observation of an environment for an agent: CKF, underlay and
// mask (all-ones for baselines).
struct Observation {
  ckf::Ckf state;
  ckf::Ckf underlay;
  affordance::AffordanceMask mask;
};

Observation observe(const envs::EnvFrame& frame, const affordance::RuleSet& rules, bool use_mask, int n_actions);

// epsilon after `units` completed units of the schedule.
double epsilon_after(const AgentConfig& config, Schedule schedule, int units);

// Runs the training loop. Stage 1 (episodes) reports each training
// episode's return; stage 2 (epochs) trains `steps_per_epoch` steps across
// episode boundaries, then plays one greedy evaluation episode on a clone
// of the environment and reports its return. `rules` is ignored by the
// baseline agents.
RunResult train(envs::Environment& env, const affordance::RuleSet& rules, const TrainConfig& config,
                const TrainHooks& hooks = {});

// One greedy episode (epsilon 0, masked for IECR agents).
UnitMetrics evaluate(const Learner& learner, envs::Environment& env, const affordance::RuleSet& rules,
                     std::uint64_t seed);

}  // namespace iota::agents
