#include "iota/nn/loss.hpp"

#include <cmath>
#include <sstream>

#include <spdlog/spdlog.h>

#include "iota/common/error.hpp"

namespace iota::nn {

namespace {

int argmax_row(const Eigen::MatrixXd& q, int col) {
  Eigen::Index best = 0;
  q.col(col).maxCoeff(&best);
  return static_cast<int>(best);
}

void check_spec(const Eigen::MatrixXd& q, const LossSpec& spec) {
  if (spec.batch <= 0) throw DomainError("loss batch size must be positive");
  for (const auto& t : spec.terms) {
    if (t.sample < 0 || t.sample >= q.cols() || t.action < kArgmax || t.action >= q.rows()) {
      throw DomainError("loss term refers to a missing sample or action");
    }
  }
}

std::string dump(const Network& net, const Eigen::VectorXd& grad, double loss, const LossSpec& spec) {
  std::ostringstream out;
  out << "non-finite training step: loss=" << loss << " batch=" << spec.batch << " terms=" << spec.terms.size();
  for (Eigen::Index i = 0; i < net.size(); ++i) {
    if (!std::isfinite(net.params()[i])) {
      out << " first bad param " << net.locate(i) << "=" << net.params()[i];
      break;
    }
  }
  for (Eigen::Index i = 0; i < grad.size(); ++i) {
    if (!std::isfinite(grad[i])) {
      out << " first bad grad " << net.locate(i) << "=" << grad[i];
      break;
    }
  }
  out << " |param|max=" << net.params().cwiseAbs().maxCoeff();
  for (const auto& t : spec.terms) {
    if (!std::isfinite(t.target)) {
      out << " bad target at sample " << t.sample;
      break;
    }
  }
  return out.str();
}

}  // namespace

double huber(double residual) {
  const double a = std::abs(residual);
  return a <= 1.0 ? 0.5 * residual * residual : a - 0.5;
}

double huber_grad(double residual) {
  if (residual > 1.0) return 1.0;
  if (residual < -1.0) return -1.0;
  return residual;
}

double evaluate_loss(const Eigen::MatrixXd& q, const LossSpec& spec) {
  check_spec(q, spec);
  double total = 0;
  for (const auto& t : spec.terms) {
    const int a = t.action == kArgmax ? argmax_row(q, t.sample) : t.action;
    total += t.weight * huber(t.target - q(a, t.sample));
  }
  return total / spec.batch;
}

double evaluate_loss(const Network& net, const Eigen::MatrixXd& states, const LossSpec& spec) {
  return evaluate_loss(net.forward(states).q, spec);
}

double loss_and_gradient(const Network& net, const Eigen::MatrixXd& states, const LossSpec& spec,
                         Eigen::VectorXd& grad) {
  ForwardCache cache;
  const Eigen::MatrixXd q = net.forward(states, &cache).q;
  check_spec(q, spec);
  Eigen::MatrixXd dq = Eigen::MatrixXd::Zero(q.rows(), q.cols());
  double total = 0;
  for (const auto& t : spec.terms) {
    const int a = t.action == kArgmax ? argmax_row(q, t.sample) : t.action;
    const double r = t.target - q(a, t.sample);
    total += t.weight * huber(r);
    dq(a, t.sample) -= t.weight * huber_grad(r) / spec.batch;
  }
  grad = Eigen::VectorXd::Zero(net.size());
  net.backward(cache, dq, grad);
  return total / spec.batch;
}

double backward_and_step(Network& net, Adam& adam, const Eigen::MatrixXd& states, const LossSpec& spec) {
  Eigen::VectorXd grad;
  const double loss = loss_and_gradient(net, states, spec, grad);
  if (!std::isfinite(loss) || !grad.allFinite()) {
    const auto message = dump(net, grad, loss, spec);
    spdlog::error("{}", message);
    throw NumericError(message);
  }
  adam.step(net.params(), grad);
  if (!net.finite()) {
    const auto message = dump(net, grad, loss, spec);
    spdlog::error("{}", message);
    throw NumericError(message);
  }
  return loss;
}

}  // namespace iota::nn
