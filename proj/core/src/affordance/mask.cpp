#include "iota/affordance/mask.hpp"

#include <algorithm>
#include <cstdlib>

#include "iota/common/error.hpp"

namespace iota::affordance {

int AffordanceMask::count_allowed() const {
  return static_cast<int>(std::count_if(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b != 0; }));
}

std::string AffordanceMask::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (i > 0) out += ',';
    out += bits_[i] ? '1' : '0';
  }
  return out + "]";
}

namespace {

int sign(int x) { return (x > 0) - (x < 0); }

// True when any cell on the straight scan from `from` (inclusive) over
// `range` steps along (dr, dc) holds `key`. Stops at the grid edge.
bool scan_hits(const ckf::Ckf& grid, ckf::CellIndex from, int dr, int dc, int range, int key) {
  for (int t = 0; t <= range; ++t) {
    const int r = from.row + dr * t;
    const int c = from.col + dc * t;
    if (!grid.contains(r, c)) break;
    if (grid.key_at(r, c) == key) return true;
  }
  return false;
}

}  // namespace

AffordanceMask affordance_mask(const ckf::Ckf& ckf, const ckf::Ckf& underlay, const RuleSet& rules) {
  if (ckf.rows() != underlay.rows() || ckf.cols() != underlay.cols()) {
    throw DomainError("CKF and underlay shapes differ");
  }
  const auto main = ckf.find_key(1);
  if (!main) throw DomainError("main element not found in CKF");

  AffordanceMask mask = AffordanceMask::all_ones(rules.n_actions());

  for (int a = 0; a < rules.n_actions(); ++a) {
    for (const Rule& rule : rules.for_action(a)) {
      bool hit = false;
      if (rule.zero_range()) {
        hit = underlay.key_at(main->row, main->col) == rule.key_index;
      } else {
        hit = scan_hits(ckf, *main, 0, sign(rule.phi), std::abs(rule.phi), rule.key_index) ||
              scan_hits(ckf, *main, sign(rule.alpha), 0, std::abs(rule.alpha), rule.key_index);
      }
      if (hit) {
        mask.forbid(a);
        break;
      }
    }
  }
  return mask;
}

}  // namespace iota::affordance
