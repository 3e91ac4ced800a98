#include <sstream>

#include <gtest/gtest.h>

#include "iota/common/error.hpp"
#include "iota/common/rng.hpp"
#include "iota/nn/adam.hpp"
#include "iota/nn/checkpoint.hpp"
#include "iota/nn/loss.hpp"
#include "iota/nn/network.hpp"
#include "support/oracles.hpp"

using namespace iota;
using namespace iota::nn;

namespace {

Architecture small(Head head, int inputs = 6, int n_actions = 3) {
  return Architecture{inputs, n_actions, head, 8, 5};
}

Eigen::MatrixXd random_states(int inputs, int batch, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd x(inputs, batch);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.uniform(0, 1);
  return x;
}

Eigen::MatrixXd slot_weight(const Network& net, const DenseSlot& s) {
  return Eigen::Map<const Eigen::MatrixXd>(net.params().data() + s.offset, s.out, s.in);
}

Eigen::VectorXd slot_bias(const Network& net, const DenseSlot& s) {
  return Eigen::Map<const Eigen::VectorXd>(net.params().data() + s.offset + s.weight_size(), s.out);
}

const DenseSlot& slot(const Network& net, const std::string& name) {
  for (const auto& s : net.slots()) {
    if (s.name == name) return s;
  }
  throw std::runtime_error("no slot " + name);
}

// Reference forward built only from the slot manifest.
Eigen::VectorXd reference_q(const Network& net, const Eigen::VectorXd& x) {
  auto layer = [&](const std::string& name, const Eigen::VectorXd& in, bool relu) {
    const auto& s = slot(net, name);
    return oracle::dense(slot_weight(net, s), slot_bias(net, s), in, relu);
  };
  const auto h = layer("trunk2", layer("trunk1", x, true), true);
  if (net.arch().head == Head::single) return layer("q", h, false);
  const double v = layer("value", layer("value_hidden", h, true), false)[0];
  const Eigen::VectorXd adv = layer("advantage", layer("advantage_hidden", h, true), false);
  return (adv.array() - adv.mean() + v).matrix();
}

}  // namespace

TEST(Network, ZeroParamsGiveZeros) {
  for (Head head : {Head::single, Head::dueling}) {
    const auto net = Network::zeros(small(head));
    const auto f = net.forward(random_states(6, 4, 1));
    EXPECT_TRUE(f.q.isZero(0));
    if (head == Head::dueling) {
      EXPECT_TRUE(f.value.isZero(0));
      EXPECT_TRUE(f.advantage.isZero(0));
    }
  }
}

TEST(Network, ParameterCount) {
  const Network single(Architecture{50, 4, Head::single}, 1);
  EXPECT_EQ(single.size(), (50 * 128 + 128) + (128 * 128 + 128) + (128 * 4 + 4));
  const Network dueling(Architecture{50, 4, Head::dueling}, 1);
  EXPECT_EQ(dueling.size(), (50 * 128 + 128) + (128 * 128 + 128) + (128 * 64 + 64) + (64 + 1) + (128 * 64 + 64) +
                                (64 * 4 + 4));
}

TEST(Network, KnownWeights) {
  auto net = Network::zeros(Architecture{2, 2, Head::single, 2, 2});
  // Identity trunk, q = [x0 + x1, x0 - x1 + 1]; negative outputs are not
  // clipped at the head.
  auto& p = net.params();
  const auto& t1 = slot(net, "trunk1");
  const auto& t2 = slot(net, "trunk2");
  const auto& q = slot(net, "q");
  p[t1.offset + 0] = 1;  // (0,0)
  p[t1.offset + 3] = 1;  // (1,1)
  p[t2.offset + 0] = 1;
  p[t2.offset + 3] = 1;
  p[q.offset + 0] = 1;   // (0,0)
  p[q.offset + 1] = 1;   // (1,0)
  p[q.offset + 2] = 1;   // (0,1)
  p[q.offset + 3] = -1;  // (1,1)
  p[q.offset + q.weight_size() + 1] = 1;
  const auto out = net.q_values(Eigen::Vector2d(2, 3));
  EXPECT_DOUBLE_EQ(out[0], 5);
  EXPECT_DOUBLE_EQ(out[1], 0);
}

TEST(Network, MatchesReferenceForward) {
  for (Head head : {Head::single, Head::dueling}) {
    const Network net(small(head), 42);
    const auto x = random_states(6, 5, 2);
    const auto f = net.forward(x);
    for (int b = 0; b < 5; ++b) {
      const auto want = reference_q(net, x.col(b));
      for (int a = 0; a < 3; ++a) EXPECT_NEAR(f.q(a, b), want[a], 1e-12);
      EXPECT_TRUE(net.q_values(x.col(b)).isApprox(f.q.col(b), 1e-14));
    }
    EXPECT_TRUE(f.q.allFinite());
  }
}

TEST(Network, DuelingIdentity) {
  const Network net(small(Head::dueling), 7);
  const auto f = net.forward(random_states(6, 16, 3));
  for (Eigen::Index b = 0; b < 16; ++b) {
    const Eigen::VectorXd adv = f.advantage.col(b);
    const Eigen::VectorXd centered = (adv.array() - adv.mean()).matrix();
    for (int a = 0; a < 3; ++a) EXPECT_NEAR(f.q(a, b) - f.value[b] - centered[a], 0.0, 1e-14);
  }
}

TEST(Network, DuelingCenteredAdvantagePassesThrough) {
  auto net = Network::zeros(Architecture{1, 2, Head::dueling, 1, 1});
  // Advantage head bias [1, -1] has mean 0, value bias 2.
  const auto& adv = slot(net, "advantage");
  const auto& val = slot(net, "value");
  net.params()[adv.offset + adv.weight_size()] = 1;
  net.params()[adv.offset + adv.weight_size() + 1] = -1;
  net.params()[val.offset + val.weight_size()] = 2;
  const auto f = net.forward(Eigen::MatrixXd::Ones(1, 1));
  EXPECT_EQ(f.q(0, 0) - f.value[0], 1);
  EXPECT_EQ(f.q(1, 0) - f.value[0], -1);
}

TEST(Network, ShapeMismatch) {
  const Network net(small(Head::single), 1);
  EXPECT_THROW(net.forward(Eigen::MatrixXd::Zero(5, 1)), DomainError);
}

TEST(Network, SameSeedSameParams) {
  EXPECT_EQ(Network(small(Head::dueling), 3).params(), Network(small(Head::dueling), 3).params());
  EXPECT_NE(Network(small(Head::dueling), 3).params(), Network(small(Head::dueling), 4).params());
  const Network net(small(Head::single), 3);
  const double bound = 1.0 / std::sqrt(6.0);
  const auto& t1 = slot(net, "trunk1");
  EXPECT_LE(net.params().segment(t1.offset, t1.size()).cwiseAbs().maxCoeff(), bound);
}

TEST(Network, CopyIsIndependent) {
  Network src(small(Head::single), 5);
  const Network copy = src;
  const auto x = random_states(6, 3, 4);
  EXPECT_EQ(copy.forward(x).q, src.forward(x).q);
  src.params()[0] += 1;
  EXPECT_NE(copy.params()[0], src.params()[0]);
  EXPECT_EQ(copy.forward(x).q, Network(small(Head::single), 5).forward(x).q);
}

TEST(Network, Locate) {
  const Network net(small(Head::single), 1);
  EXPECT_EQ(net.locate(0), "trunk1.weight[0,0]");
  EXPECT_EQ(net.locate(6 * 8), "trunk1.bias[0]");
}

TEST(Huber, Examples) {
  EXPECT_EQ(huber(0), 0);
  EXPECT_DOUBLE_EQ(huber(0.5), 0.125);
  EXPECT_DOUBLE_EQ(huber(3), 2.5);
  EXPECT_DOUBLE_EQ(huber(-3), 2.5);
  EXPECT_DOUBLE_EQ(huber_grad(0.5), 0.5);
  EXPECT_DOUBLE_EQ(huber_grad(-3), -1);
}

TEST(Adam, ClosedFormFirstStep) {
  Adam adam(1);
  Eigen::VectorXd p(1);
  p << 0.5;
  Eigen::VectorXd g(1);
  g << 2.0;
  adam.step(p, g);
  // m_hat = g, v_hat = g^2, so the step is lr * g / (|g| + eps).
  EXPECT_DOUBLE_EQ(p[0], 0.5 - 1e-4 * 2.0 / (2.0 + 1e-8));

  g << -0.5;
  adam.step(p, g);
  const double m = 0.9 * 0.1 * 2.0 + 0.1 * -0.5;
  const double v = 0.999 * 0.001 * 4.0 + 0.001 * 0.25;
  const double m_hat = m / (1 - 0.9 * 0.9);
  const double v_hat = v / (1 - 0.999 * 0.999);
  EXPECT_NEAR(p[0], 0.5 - 1e-4 * 2.0 / (2.0 + 1e-8) - 1e-4 * m_hat / (std::sqrt(v_hat) + 1e-8), 1e-15);
}

TEST(Adam, QuadraticBowlDescendsMonotonically) {
  Adam adam(4, AdamConfig{0.01});
  Eigen::VectorXd x(4), c(4);
  x << 5, -4, 3, -6;
  c << 1, 2, -1, 0;
  auto f = [&] { return (x - c).squaredNorm(); };
  double prev = f();
  for (int step = 1; step <= 200; ++step) {
    adam.step(x, 2 * (x - c));
    const double now = f();
    if (step > 10) {
      ASSERT_LT(now, prev) << "step " << step;
    }
    prev = now;
  }
  EXPECT_EQ(adam.steps(), 200);
}

TEST(Loss, ZeroLossLeavesParamsUnchanged) {
  Network net(small(Head::single), 1);
  const auto before = net.params();
  Adam adam(net.size());
  const auto x = random_states(6, 2, 9);
  const auto q = net.forward(x).q;
  LossSpec spec{2, {{0, 1, q(1, 0), 1.0}, {1, kArgmax, q.col(1).maxCoeff(), 1.0}}};
  EXPECT_EQ(backward_and_step(net, adam, x, spec), 0.0);
  EXPECT_EQ(net.params(), before);
}

TEST(Loss, EvaluateMatchesHuberSum) {
  Eigen::MatrixXd q(2, 2);
  q << 1, 4, 3, -2;
  LossSpec spec{2, {{0, 0, 4, 1.0}, {1, kArgmax, 4.5, 0.5}, {1, 1, -2, 2.0}}};
  EXPECT_DOUBLE_EQ(evaluate_loss(q, spec), (huber(3) + 0.5 * huber(0.5)) / 2);
  EXPECT_THROW(evaluate_loss(q, LossSpec{2, {{2, 0, 0, 1}}}), DomainError);
}

TEST(Loss, GradientMatchesFiniteDifferences) {
  for (Head head : {Head::single, Head::dueling}) {
    Network net(small(head), 11);
    const auto x = random_states(6, 4, 12);
    const auto q = net.forward(x).q;
    LossSpec spec{4, {}};
    for (int b = 0; b < 4; ++b) {
      spec.terms.push_back({b, b % 3, q(b % 3, b) + (b - 1.5) * 0.7, 1.0});
      spec.terms.push_back({b, kArgmax, q.col(b).maxCoeff() - 0.3, 0.5});
    }
    Eigen::VectorXd grad;
    loss_and_gradient(net, x, spec, grad);
    ASSERT_EQ(grad.size(), net.size());
    for (Eigen::Index i = 0; i < net.size(); i += 3) {
      Network plus = net, minus = net;
      plus.params()[i] += 1e-5;
      minus.params()[i] -= 1e-5;
      const double fd = (evaluate_loss(plus, x, spec) - evaluate_loss(minus, x, spec)) / 2e-5;
      const double rel = std::abs(fd - grad[i]) / std::max({std::abs(fd), std::abs(grad[i]), 1e-6});
      ASSERT_LT(rel, 1e-4) << net.locate(i) << " fd=" << fd << " analytic=" << grad[i];
    }
  }
}

TEST(Loss, DeterministicTrajectory) {
  auto run = [] {
    Network net(small(Head::dueling), 21);
    Adam adam(net.size());
    for (int step = 0; step < 20; ++step) {
      const auto x = random_states(6, 4, 100 + static_cast<std::uint64_t>(step));
      LossSpec spec{4, {{0, 0, 1, 1}, {1, 2, -1, 1}, {2, kArgmax, 3, 0.5}, {3, 1, 0.2, 1}}};
      backward_and_step(net, adam, x, spec);
    }
    return net.params();
  };
  EXPECT_EQ(run(), run());
}

TEST(Loss, NonFiniteIsAHardError) {
  Network net(small(Head::single), 1);
  Adam adam(net.size());
  const auto x = random_states(6, 1, 2);
  LossSpec spec{1, {{0, 0, std::numeric_limits<double>::quiet_NaN(), 1}}};
  EXPECT_THROW(backward_and_step(net, adam, x, spec), NumericError);
  net.params()[3] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(backward_and_step(net, adam, x, LossSpec{1, {{0, 0, 1, 1}}}), NumericError);
}

TEST(Checkpoint, RoundTrip) {
  for (Head head : {Head::single, Head::dueling}) {
    const Network net(small(head), 8);
    std::stringstream buf;
    save_checkpoint(net, buf);
    const auto loaded = load_checkpoint(buf);
    EXPECT_EQ(loaded.arch(), net.arch());
    ASSERT_EQ(loaded.size(), net.size());
    for (Eigen::Index i = 0; i < net.size(); ++i) {
      EXPECT_EQ(loaded.params()[i], static_cast<double>(static_cast<float>(net.params()[i])));
    }
    // A float32 network survives a second trip bit-for-bit.
    std::stringstream again;
    save_checkpoint(loaded, again);
    EXPECT_EQ(load_checkpoint(again).params(), loaded.params());
  }
}

TEST(Checkpoint, Header) {
  const Network net(small(Head::single), 8);
  std::stringstream buf;
  save_checkpoint(net, buf);
  const std::string bytes = buf.str();
  EXPECT_EQ(bytes.substr(0, 8), std::string("IOTANN\0\0", 8));
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), kCheckpointVersion);

  std::string bad = bytes;
  bad[0] = 'X';
  std::stringstream in(bad);
  EXPECT_THROW(load_checkpoint(in), ConfigError);
  std::stringstream truncated(bytes.substr(0, bytes.size() - 3));
  EXPECT_THROW(load_checkpoint(truncated), ConfigError);
}
