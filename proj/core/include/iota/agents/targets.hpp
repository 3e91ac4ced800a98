#pragma once

#include <Eigen/Dense>

#include "iota/affordance/mask.hpp"

namespace iota::agents {

// max over (q + |min q|) * mask - min q
double masked_shifted_max(const Eigen::VectorXd& q, const affordance::AffordanceMask& mask);

// Standard bootstrap r + gamma * max q'(target net); r when terminal.
double target_max(double r, double gamma, const Eigen::VectorXd& q_next_target, bool terminal);

// Double-DQN bootstrap: the main network picks, the target network values.
double target_double_plain(double r, double gamma, const Eigen::VectorXd& q_next_target,
                           const Eigen::VectorXd& q_next_main, bool terminal);

// r + gamma * max[(q' + |min q'|) * mask' - min q'] on the target network.
double target_simple(double r, double gamma, const Eigen::VectorXd& q_next_target,
                     const affordance::AffordanceMask& next_mask, bool terminal);

// Index chosen by the masked double-target bracket
//   (q'_target + |min q'_target|) * mask' - min q'_main
// with ties to the lowest permitted index (argmax over all entries when the
// mask is all zeros).
int target_double_index(const Eigen::VectorXd& q_next_target, const Eigen::VectorXd& q_next_main,
                        const affordance::AffordanceMask& next_mask);

// r + gamma * q'_target[target_double_index(...)]; r when terminal.
double target_double(double r, double gamma, const Eigen::VectorXd& q_next_target,
                     const Eigen::VectorXd& q_next_main, const affordance::AffordanceMask& next_mask,
                     bool terminal);

// r + gamma * max[(q + |min q|) * mask - min q] on the current state with the
// main network. Used as a constant in the affordance loss.
double goal_value(double r, double gamma, const Eigen::VectorXd& q_main_s, const affordance::AffordanceMask& mask);

// Squared-error forms. Training uses Huber residuals instead.
double affordance_loss(double goal, const Eigen::VectorXd& q_main_s, bool terminal = false);
double td_loss_simple(double target, double q_sa);
double td_loss_double(double target, const Eigen::VectorXd& q_main_s);
double total_loss(double td_term, double aff_term, double lambda);

}  // namespace iota::agents
