#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace iota::nn {

enum class Head { single, dueling };

std::string to_string(Head head);

struct Architecture {
  int inputs = 0;
  int n_actions = 0;
  Head head = Head::single;
  int hidden = 128;         // width of both trunk layers
  int stream_hidden = 64;   // width of each dueling stream's hidden layer

  friend bool operator==(const Architecture&, const Architecture&) = default;
};

// One dense layer's slice of the flat parameter vector. Weights are stored
// column-major as an out x in matrix, followed by the bias.
struct DenseSlot {
  std::string name;
  int in = 0;
  int out = 0;
  bool relu = false;
  Eigen::Index offset = 0;

  Eigen::Index weight_size() const { return static_cast<Eigen::Index>(in) * out; }
  Eigen::Index size() const { return weight_size() + out; }
};

// Batched forward result; one column per sample.
struct Forward {
  Eigen::MatrixXd q;             // n_actions x B
  Eigen::RowVectorXd value;      // dueling only
  Eigen::MatrixXd advantage;     // dueling only
};

// Activations kept for the backward pass.
struct ForwardCache {
  Eigen::MatrixXd input;
  std::vector<Eigen::MatrixXd> acts;  // output of each slot, in slot order
};

// Fully connected Q-network: two ReLU trunk layers, then either a linear
// Q head or value/advantage streams with one ReLU hidden layer each,
// aggregated as q = v + adv - mean(adv).
class Network {
 public:
  Network() = default;
  // Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) for weights and biases.
  Network(const Architecture& arch, std::uint64_t seed);
  static Network zeros(const Architecture& arch);

  const Architecture& arch() const { return arch_; }
  std::span<const DenseSlot> slots() const { return slots_; }
  const Eigen::VectorXd& params() const { return params_; }
  Eigen::VectorXd& params() { return params_; }
  Eigen::Index size() const { return params_.size(); }

  // `x` is inputs x B. Throws DomainError on a shape mismatch.
  Forward forward(const Eigen::MatrixXd& x, ForwardCache* cache = nullptr) const;
  Eigen::VectorXd q_values(const Eigen::VectorXd& state) const;

  // Accumulates dLoss/dparams into `grad` given dLoss/dq (n_actions x B).
  void backward(const ForwardCache& cache, const Eigen::MatrixXd& dq, Eigen::VectorXd& grad) const;

  bool finite() const { return params_.allFinite(); }
  // Name of the slot that owns parameter `index`.
  std::string locate(Eigen::Index index) const;

 private:
  void layout_slots();
  Eigen::Map<const Eigen::MatrixXd> weight(const DenseSlot& s) const;
  Eigen::Map<const Eigen::VectorXd> bias(const DenseSlot& s) const;
  Eigen::MatrixXd dense(const DenseSlot& s, const Eigen::MatrixXd& x) const;

  Architecture arch_;
  std::vector<DenseSlot> slots_;
  Eigen::VectorXd params_;
};

}  // namespace iota::nn
