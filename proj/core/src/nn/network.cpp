#include "iota/nn/network.hpp"

#include <cmath>

#include "iota/common/error.hpp"
#include "iota/common/rng.hpp"

namespace iota::nn {

namespace {

enum SingleSlot { kTrunk1, kTrunk2, kQ };
enum DuelSlot { kValueHidden = 2, kValue, kAdvHidden, kAdvantage };

Eigen::MatrixXd relu_mask(const Eigen::MatrixXd& d, const Eigen::MatrixXd& act) {
  return (act.array() > 0.0).select(d, 0.0);
}

}  // namespace

std::string to_string(Head head) { return head == Head::single ? "single" : "dueling"; }

Network::Network(const Architecture& arch, std::uint64_t seed) : arch_(arch) {
  layout_slots();
  Rng rng(derive_seed(seed, "nn.init"));
  for (const auto& s : slots_) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(s.in));
    for (Eigen::Index i = 0; i < s.size(); ++i) params_[s.offset + i] = rng.uniform(-bound, bound);
  }
}

Network Network::zeros(const Architecture& arch) {
  Network net;
  net.arch_ = arch;
  net.layout_slots();
  return net;
}

void Network::layout_slots() {
  if (arch_.inputs <= 0 || arch_.n_actions <= 0 || arch_.hidden <= 0 || arch_.stream_hidden <= 0) {
    throw DomainError("network dimensions must be positive");
  }
  const int h = arch_.hidden;
  slots_ = {{"trunk1", arch_.inputs, h, true, 0}, {"trunk2", h, h, true, 0}};
  if (arch_.head == Head::single) {
    slots_.push_back({"q", h, arch_.n_actions, false, 0});
  } else {
    const int sh = arch_.stream_hidden;
    slots_.push_back({"value_hidden", h, sh, true, 0});
    slots_.push_back({"value", sh, 1, false, 0});
    slots_.push_back({"advantage_hidden", h, sh, true, 0});
    slots_.push_back({"advantage", sh, arch_.n_actions, false, 0});
  }
  Eigen::Index offset = 0;
  for (auto& s : slots_) {
    s.offset = offset;
    offset += s.size();
  }
  params_ = Eigen::VectorXd::Zero(offset);
}

Eigen::Map<const Eigen::MatrixXd> Network::weight(const DenseSlot& s) const {
  return {params_.data() + s.offset, s.out, s.in};
}

Eigen::Map<const Eigen::VectorXd> Network::bias(const DenseSlot& s) const {
  return {params_.data() + s.offset + s.weight_size(), s.out};
}

Eigen::MatrixXd Network::dense(const DenseSlot& s, const Eigen::MatrixXd& x) const {
  Eigen::MatrixXd y = weight(s) * x;
  y.colwise() += bias(s);
  if (s.relu) y = y.cwiseMax(0.0);
  return y;
}

Forward Network::forward(const Eigen::MatrixXd& x, ForwardCache* cache) const {
  if (x.rows() != arch_.inputs) {
    throw DomainError("network expects " + std::to_string(arch_.inputs) + " inputs, got " +
                      std::to_string(x.rows()));
  }
  std::vector<Eigen::MatrixXd> acts(slots_.size());
  acts[kTrunk1] = dense(slots_[kTrunk1], x);
  acts[kTrunk2] = dense(slots_[kTrunk2], acts[kTrunk1]);
  Forward out;
  if (arch_.head == Head::single) {
    acts[kQ] = dense(slots_[kQ], acts[kTrunk2]);
    out.q = acts[kQ];
  } else {
    acts[kValueHidden] = dense(slots_[kValueHidden], acts[kTrunk2]);
    acts[kValue] = dense(slots_[kValue], acts[kValueHidden]);
    acts[kAdvHidden] = dense(slots_[kAdvHidden], acts[kTrunk2]);
    acts[kAdvantage] = dense(slots_[kAdvantage], acts[kAdvHidden]);
    out.value = acts[kValue].row(0);
    out.advantage = acts[kAdvantage];
    const Eigen::RowVectorXd mean = out.advantage.colwise().mean();
    out.q = out.advantage;
    out.q.rowwise() += out.value - mean;
  }
  if (cache != nullptr) {
    cache->input = x;
    cache->acts = std::move(acts);
  }
  return out;
}

Eigen::VectorXd Network::q_values(const Eigen::VectorXd& state) const {
  return forward(Eigen::MatrixXd(state)).q.col(0);
}

void Network::backward(const ForwardCache& cache, const Eigen::MatrixXd& dq, Eigen::VectorXd& grad) const {
  if (grad.size() != params_.size()) grad = Eigen::VectorXd::Zero(params_.size());
  // Gradient of one dense layer given dLoss/d(output after activation);
  // returns dLoss/d(input).
  auto layer = [&](int idx, const Eigen::MatrixXd& input, Eigen::MatrixXd dout) {
    const auto& s = slots_[static_cast<std::size_t>(idx)];
    if (s.relu) dout = relu_mask(dout, cache.acts[static_cast<std::size_t>(idx)]);
    Eigen::Map<Eigen::MatrixXd> gw(grad.data() + s.offset, s.out, s.in);
    Eigen::Map<Eigen::VectorXd> gb(grad.data() + s.offset + s.weight_size(), s.out);
    gw.noalias() += dout * input.transpose();
    gb += dout.rowwise().sum();
    return Eigen::MatrixXd(weight(s).transpose() * dout);
  };

  Eigen::MatrixXd d_trunk2;
  if (arch_.head == Head::single) {
    d_trunk2 = layer(kQ, cache.acts[kTrunk2], dq);
  } else {
    const Eigen::MatrixXd dv = dq.colwise().sum();
    Eigen::MatrixXd dadv = dq;
    dadv.rowwise() -= dq.colwise().mean();
    const Eigen::MatrixXd d_vh = layer(kValue, cache.acts[kValueHidden], dv);
    d_trunk2 = layer(kValueHidden, cache.acts[kTrunk2], d_vh);
    const Eigen::MatrixXd d_ah = layer(kAdvantage, cache.acts[kAdvHidden], dadv);
    d_trunk2 += layer(kAdvHidden, cache.acts[kTrunk2], d_ah);
  }
  const Eigen::MatrixXd d_trunk1 = layer(kTrunk2, cache.acts[kTrunk1], d_trunk2);
  layer(kTrunk1, cache.input, d_trunk1);
}

std::string Network::locate(Eigen::Index index) const {
  for (const auto& s : slots_) {
    if (index >= s.offset && index < s.offset + s.size()) {
      const Eigen::Index local = index - s.offset;
      if (local < s.weight_size()) {
        return s.name + ".weight[" + std::to_string(local % s.out) + "," + std::to_string(local / s.out) + "]";
      }
      return s.name + ".bias[" + std::to_string(local - s.weight_size()) + "]";
    }
  }
  return "?";
}

}  // namespace iota::nn
