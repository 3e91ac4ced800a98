#include "iota/agents/policy.hpp"

#include <cmath>

#include <spdlog/spdlog.h>

#include "iota/common/error.hpp"

namespace iota::agents {

Eigen::VectorXd shift_mask_values(const Eigen::VectorXd& q, const affordance::AffordanceMask& mask) {
  if (q.size() == 0) throw DomainError("empty value vector");
  if (q.size() != mask.size()) throw DomainError("value vector and mask lengths differ");
  const double shift = std::abs(q.minCoeff());
  Eigen::VectorXd out(q.size());
  for (Eigen::Index a = 0; a < q.size(); ++a) {
    out[a] = mask.allowed(static_cast<int>(a)) ? q[a] + shift : 0.0;
  }
  return out;
}

int masked_argmax(const Eigen::VectorXd& q, const affordance::AffordanceMask& mask) {
  const Eigen::VectorXd shifted = shift_mask_values(q, mask);
  int best = -1;
  for (int a = 0; a < mask.size(); ++a) {
    if (mask.allowed(a) && (best < 0 || shifted[a] > shifted[best])) best = a;
  }
  return best;
}

Selection select_action(const Eigen::VectorXd& values, const affordance::AffordanceMask& mask, double epsilon,
                        Rng& rng) {
  if (values.size() != mask.size()) throw DomainError("value vector and mask lengths differ");
  Selection sel;
  const bool explore = rng.uniform() < epsilon;
  const int allowed = mask.count_allowed();
  if (allowed == 0) {
    spdlog::warn("all actions masked; choosing uniformly among all {}", mask.size());
    sel.fallback = true;
    sel.explored = true;
    sel.action = static_cast<int>(rng.below(static_cast<std::uint64_t>(mask.size())));
    return sel;
  }
  if (explore) {
    sel.explored = true;
    auto k = static_cast<int>(rng.below(static_cast<std::uint64_t>(allowed)));
    for (int a = 0; a < mask.size(); ++a) {
      if (mask.allowed(a) && k-- == 0) {
        sel.action = a;
        break;
      }
    }
    return sel;
  }
  sel.action = masked_argmax(values, mask);
  return sel;
}

}  // namespace iota::agents
