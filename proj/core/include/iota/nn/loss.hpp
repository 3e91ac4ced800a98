#pragma once

#include <vector>

#include <Eigen/Dense>

#include "iota/nn/adam.hpp"
#include "iota/nn/network.hpp"

namespace iota::nn {

inline constexpr int kArgmax = -1;

double huber(double residual);
// d huber / d residual
double huber_grad(double residual);

// weight * huber(target - q(sample, action)); action kArgmax reads the
// largest Q-value of the sample. Targets are constants (no gradient).
struct QTerm {
  int sample = 0;
  int action = 0;
  double target = 0;
  double weight = 1;
};

// Sum of terms divided by the batch size.
struct LossSpec {
  int batch = 0;
  std::vector<QTerm> terms;
};

// Loss of `spec` on a forward result.
double evaluate_loss(const Eigen::MatrixXd& q, const LossSpec& spec);
double evaluate_loss(const Network& net, const Eigen::MatrixXd& states, const LossSpec& spec);

// Loss value and full parameter gradient.
double loss_and_gradient(const Network& net, const Eigen::MatrixXd& states, const LossSpec& spec,
                         Eigen::VectorXd& grad);

// Gradient step with Adam. Throws NumericError (after logging a diagnostic
// dump) if the loss, gradient or updated parameters are not finite. Returns
// the loss before the update.
double backward_and_step(Network& net, Adam& adam, const Eigen::MatrixXd& states, const LossSpec& spec);

}  // namespace iota::nn
