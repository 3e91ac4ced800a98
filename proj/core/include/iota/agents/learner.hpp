#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "iota/agents/agent_kind.hpp"
#include "iota/agents/policy.hpp"
#include "iota/agents/replay_buffer.hpp"
#include "iota/nn/adam.hpp"
#include "iota/nn/loss.hpp"
#include "iota/nn/network.hpp"

namespace iota::agents {

struct AgentConfig {
  double gamma = 0.99;
  int batch = 64;
  int target_sync = 100;
  double epsilon_max = 0.9;
  double epsilon_min = 0.05;
  double epsilon_decay_episode = 0.001;
  double epsilon_decay_epoch = 0.01;
  double lambda = 1.0;
  std::size_t replay_capacity = 50000;
  int hidden = 128;
  int stream_hidden = 64;
  nn::AdamConfig adam;
};

// Per-sample inputs to the loss of one mini-batch.
struct BatchView {
  Eigen::MatrixXd states;       // inputs x B
  Eigen::MatrixXd next_states;  // inputs x B
  std::vector<const Transition*> items;
};

// Builds the composite loss of `kind` for a batch. `q_s_main`,
// `q_next_main` and `q_next_target` are n_actions x B forward results;
// every target is a constant.
//   baselines:      huber(target - q(s,a)), target from the max or double bootstrap
//   IDQN, IDuDQN:   huber(target_simple - q(s,a)) + lambda * huber(goal - max q(s))
//   IDDQN, IDDDQN:  huber(target_double - max q(s)) + lambda * huber(goal - max q(s))
// Terminal samples use target = r and drop the affordance term.
nn::LossSpec build_loss(AgentKind kind, double gamma, double lambda, const std::vector<const Transition*>& items,
                        const Eigen::MatrixXd& q_s_main, const Eigen::MatrixXd& q_next_main,
                        const Eigen::MatrixXd& q_next_target);

// Main and target networks, optimizer and replay buffer of one agent. One
// gradient step per observed transition once the buffer holds a batch;
// the target network is synced every `target_sync` observed steps.
class Learner {
 public:
  Learner(AgentKind kind, const nn::Architecture& arch, const AgentConfig& config, std::uint64_t seed);

  AgentKind kind() const { return kind_; }
  const AgentConfig& config() const { return config_; }
  const nn::Network& main() const { return main_; }
  const nn::Network& target() const { return target_; }
  const ReplayBuffer& buffer() const { return buffer_; }
  long steps() const { return steps_; }
  long updates() const { return updates_; }
  double last_loss() const { return last_loss_; }

  // Values the policy ranks: Q for single-stream agents, the advantage
  // stream for dueling agents.
  Eigen::VectorXd action_values(const ckf::Ckf& state) const;
  Selection act(const ckf::Ckf& state, const affordance::AffordanceMask& mask, double epsilon, Rng& rng) const;

  // Stores the transition, trains on one sampled batch and syncs the target
  // network when due.
  void observe(Transition t);

  void sync_target() { target_ = main_; }

 private:
  void train_step();
  void fill_states(const std::vector<const Transition*>& items, Eigen::MatrixXd& s, Eigen::MatrixXd& s2) const;

  AgentKind kind_;
  AgentConfig config_;
  nn::Network main_;
  nn::Network target_;
  nn::Adam adam_;
  ReplayBuffer buffer_;
  Rng replay_rng_;
  long steps_ = 0;
  long updates_ = 0;
  double last_loss_ = 0;
};

// Flattened CKF as a network input column.
Eigen::VectorXd to_input(const ckf::Ckf& state);

}  // namespace iota::agents
