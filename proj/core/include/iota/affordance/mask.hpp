#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iota/affordance/rules.hpp"
#include "iota/ckf/ckf.hpp"

namespace iota::affordance {

// Binary affordance vector: 1 = permitted, 0 = forbidden by some rule.
class AffordanceMask {
 public:
  AffordanceMask() = default;
  explicit AffordanceMask(int n_actions, std::uint8_t fill = 1)
      : bits_(static_cast<std::size_t>(n_actions), fill) {}
  explicit AffordanceMask(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

  static AffordanceMask all_ones(int n_actions) { return AffordanceMask(n_actions, 1); }

  int size() const { return static_cast<int>(bits_.size()); }
  bool allowed(int action) const { return bits_.at(static_cast<std::size_t>(action)) != 0; }
  void forbid(int action) { bits_.at(static_cast<std::size_t>(action)) = 0; }
  int count_allowed() const;
  bool all_zero() const { return count_allowed() == 0; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  std::string to_string() const;

  friend bool operator==(const AffordanceMask&, const AffordanceMask&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// Evaluates the rule set around the main element (key 1) of `ckf`.
//
// For each rule the row of the main element is scanned from its column
// through column + phi, and its column from its row through row + alpha
// (sign picks the direction, both ends inclusive, clipped at the grid). A
// cell whose key band equals the rule's key forbids the action. Rules with
// phi = alpha = 0 look only at `underlay`, the frame rasterized without the
// main element, at the main element's cell.
//
// Throws DomainError when the main element is not in `ckf` or the grids
// disagree in shape.
AffordanceMask affordance_mask(const ckf::Ckf& ckf, const ckf::Ckf& underlay, const RuleSet& rules);

}  // namespace iota::affordance
