#include "iota/agents/learner.hpp"

#include "iota/agents/targets.hpp"
#include "iota/common/error.hpp"

namespace iota::agents {

Eigen::VectorXd to_input(const ckf::Ckf& state) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(state.size()));
  state.flatten_into({x.data(), state.size()});
  return x;
}

nn::LossSpec build_loss(AgentKind kind, double gamma, double lambda, const std::vector<const Transition*>& items,
                        const Eigen::MatrixXd& q_s_main, const Eigen::MatrixXd& q_next_main,
                        const Eigen::MatrixXd& q_next_target) {
  nn::LossSpec spec;
  spec.batch = static_cast<int>(items.size());
  spec.terms.reserve(items.size() * 2);
  for (int i = 0; i < spec.batch; ++i) {
    const Transition& t = *items[static_cast<std::size_t>(i)];
    const Eigen::VectorXd qt = q_next_target.col(i);
    if (!is_iecr(kind)) {
      const double target = is_double(kind) ? target_double_plain(t.reward, gamma, qt, q_next_main.col(i), t.terminal)
                                            : target_max(t.reward, gamma, qt, t.terminal);
      spec.terms.push_back({i, t.action, target, 1.0});
      continue;
    }
    if (is_double(kind)) {
      const double target = target_double(t.reward, gamma, qt, q_next_main.col(i), t.next_mask, t.terminal);
      spec.terms.push_back({i, nn::kArgmax, target, 1.0});
    } else {
      spec.terms.push_back({i, t.action, target_simple(t.reward, gamma, qt, t.next_mask, t.terminal), 1.0});
    }
    if (!t.terminal && lambda > 0) {
      spec.terms.push_back({i, nn::kArgmax, goal_value(t.reward, gamma, q_s_main.col(i), t.mask), lambda});
    }
  }
  return spec;
}

Learner::Learner(AgentKind kind, const nn::Architecture& arch, const AgentConfig& config, std::uint64_t seed)
    : kind_(kind),
      config_(config),
      buffer_(config.replay_capacity),
      replay_rng_(derive_seed(seed, "replay")) {
  if (arch.head != head_of(kind)) {
    throw ConfigError(to_string(kind) + " needs a " + nn::to_string(head_of(kind)) + " network, got " +
                      nn::to_string(arch.head));
  }
  if (config.batch <= 0 || config.target_sync <= 0) throw ConfigError("batch and target_sync must be positive");
  if (config.lambda < 0) throw ConfigError("lambda must be non-negative");
  main_ = nn::Network(arch, derive_seed(seed, "network"));
  target_ = main_;
  adam_ = nn::Adam(main_.size(), config.adam);
}

Eigen::VectorXd Learner::action_values(const ckf::Ckf& state) const {
  const auto out = main_.forward(Eigen::MatrixXd(to_input(state)));
  return is_dueling(kind_) ? Eigen::VectorXd(out.advantage.col(0)) : Eigen::VectorXd(out.q.col(0));
}

Selection Learner::act(const ckf::Ckf& state, const affordance::AffordanceMask& mask, double epsilon,
                       Rng& rng) const {
  return select_action(action_values(state), mask, epsilon, rng);
}

void Learner::observe(Transition t) {
  buffer_.push(std::move(t));
  ++steps_;
  if (buffer_.size() >= static_cast<std::size_t>(config_.batch)) train_step();
  if (steps_ % config_.target_sync == 0) sync_target();
}

void Learner::fill_states(const std::vector<const Transition*>& items, Eigen::MatrixXd& s,
                          Eigen::MatrixXd& s2) const {
  const auto n = static_cast<Eigen::Index>(items.front()->state.size());
  s.resize(n, static_cast<Eigen::Index>(items.size()));
  s2.resize(n, static_cast<Eigen::Index>(items.size()));
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    items[i]->state.flatten_into({s.col(col).data(), static_cast<std::size_t>(n)});
    items[i]->next_state.flatten_into({s2.col(col).data(), static_cast<std::size_t>(n)});
  }
}

void Learner::train_step() {
  std::vector<const Transition*> items;
  for (auto i : buffer_.sample_indices(static_cast<std::size_t>(config_.batch), replay_rng_)) {
    items.push_back(&buffer_.at(i));
  }
  Eigen::MatrixXd s, s2;
  fill_states(items, s, s2);
  const Eigen::MatrixXd q_next_target = target_.forward(s2).q;
  Eigen::MatrixXd q_next_main, q_s_main;
  if (is_double(kind_)) q_next_main = main_.forward(s2).q;
  if (is_iecr(kind_) && config_.lambda > 0) q_s_main = main_.forward(s).q;
  const auto spec = build_loss(kind_, config_.gamma, config_.lambda, items, q_s_main, q_next_main, q_next_target);
  last_loss_ = nn::backward_and_step(main_, adam_, s, spec);
  ++updates_;
}

}  // namespace iota::agents
