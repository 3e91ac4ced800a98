#include "iota/agents/targets.hpp"

#include <cmath>

#include "iota/agents/policy.hpp"
#include "iota/common/error.hpp"

namespace iota::agents {

double masked_shifted_max(const Eigen::VectorXd& q, const affordance::AffordanceMask& mask) {
  return (shift_mask_values(q, mask).array() - q.minCoeff()).maxCoeff();
}

double target_max(double r, double gamma, const Eigen::VectorXd& q_next_target, bool terminal) {
  return terminal ? r : r + gamma * q_next_target.maxCoeff();
}

double target_double_plain(double r, double gamma, const Eigen::VectorXd& q_next_target,
                           const Eigen::VectorXd& q_next_main, bool terminal) {
  if (terminal) return r;
  Eigen::Index best = 0;
  q_next_main.maxCoeff(&best);
  return r + gamma * q_next_target[best];
}

double target_simple(double r, double gamma, const Eigen::VectorXd& q_next_target,
                     const affordance::AffordanceMask& next_mask, bool terminal) {
  return terminal ? r : r + gamma * masked_shifted_max(q_next_target, next_mask);
}

int target_double_index(const Eigen::VectorXd& q_next_target, const Eigen::VectorXd& q_next_main,
                        const affordance::AffordanceMask& next_mask) {
  if (q_next_main.size() != q_next_target.size()) throw DomainError("target and main value lengths differ");
  const Eigen::VectorXd bracket = shift_mask_values(q_next_target, next_mask).array() - q_next_main.minCoeff();
  const bool any = next_mask.count_allowed() > 0;
  int best = -1;
  for (int a = 0; a < next_mask.size(); ++a) {
    if ((!any || next_mask.allowed(a)) && (best < 0 || bracket[a] > bracket[best])) best = a;
  }
  return best;
}

double target_double(double r, double gamma, const Eigen::VectorXd& q_next_target,
                     const Eigen::VectorXd& q_next_main, const affordance::AffordanceMask& next_mask,
                     bool terminal) {
  if (terminal) return r;
  return r + gamma * q_next_target[target_double_index(q_next_target, q_next_main, next_mask)];
}

double goal_value(double r, double gamma, const Eigen::VectorXd& q_main_s, const affordance::AffordanceMask& mask) {
  return r + gamma * masked_shifted_max(q_main_s, mask);
}

double affordance_loss(double goal, const Eigen::VectorXd& q_main_s, bool terminal) {
  if (terminal) return 0.0;
  const double d = goal - q_main_s.maxCoeff();
  return d * d;
}

double td_loss_simple(double target, double q_sa) { return (target - q_sa) * (target - q_sa); }

double td_loss_double(double target, const Eigen::VectorXd& q_main_s) {
  const double d = target - q_main_s.maxCoeff();
  return d * d;
}

double total_loss(double td_term, double aff_term, double lambda) {
  if (lambda < 0) throw DomainError("lambda must be non-negative");
  return td_term + lambda * aff_term;
}

}  // namespace iota::agents
