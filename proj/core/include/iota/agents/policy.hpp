#pragma once

#include <Eigen/Dense>

#include "iota/affordance/mask.hpp"
#include "iota/common/rng.hpp"

namespace iota::agents {

// (q + |min q|) masked elementwise. Throws DomainError on an empty vector or
// a length mismatch.
Eigen::VectorXd shift_mask_values(const Eigen::VectorXd& q, const affordance::AffordanceMask& mask);

// Greedy index over shift_mask_values: highest value among permitted
// actions, ties to the lowest index. Returns -1 for an all-zero mask.
int masked_argmax(const Eigen::VectorXd& q, const affordance::AffordanceMask& mask);

struct Selection {
  int action = 0;
  bool explored = false;
  bool fallback = false;  // mask was all zeros
};

// Masked epsilon-greedy. With probability epsilon a uniform permitted
// action, otherwise masked_argmax. An all-zero mask falls back to a uniform
// draw over every action and logs a warning. Exactly one uniform() draw is
// made, plus one below() draw when exploring or falling back.
Selection select_action(const Eigen::VectorXd& values, const affordance::AffordanceMask& mask, double epsilon,
                        Rng& rng);

}  // namespace iota::agents
