#pragma once

#include <cstddef>
#include <vector>

#include "iota/affordance/mask.hpp"
#include "iota/ckf/ckf.hpp"
#include "iota/common/rng.hpp"

namespace iota::agents {

struct Transition {
  ckf::Ckf state;
  int action = 0;
  double reward = 0;
  ckf::Ckf next_state;
  affordance::AffordanceMask mask;
  affordance::AffordanceMask next_mask;
  bool terminal = false;
};

// Fixed-capacity FIFO ring with uniform sampling (with replacement).
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity = 50000);

  void push(Transition t);
  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  // Total pushes so far, including evicted ones.
  std::size_t pushed() const { return pushed_; }

  // i-th oldest stored transition.
  const Transition& at(std::size_t i) const;
  std::vector<std::size_t> sample_indices(std::size_t n, Rng& rng) const;

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;  // slot of the oldest item once full
  std::size_t pushed_ = 0;
  std::vector<Transition> items_;
};

}  // namespace iota::agents
