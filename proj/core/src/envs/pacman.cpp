// Pacman: eat every pellet while avoiding ghosts. Walls block movement.
// Ghosts patrol back and forth along a straight segment; the axis, starting
// direction and step phase come from the seed.
//
// Legend: P=pacman #=wall G=ghost .=pellet _=empty

#include <sstream>

#include "games.hpp"
#include "iota/common/error.hpp"
#include "iota/common/rng.hpp"

namespace iota::envs::detail {
namespace {

enum Action { kRight, kLeft, kUp, kDown };

struct Ghost {
  ckf::CellIndex cell;
  int dr = 0;  // grid delta of the current heading
  int dc = 0;
};

class Pacman final : public Environment {
 public:
  explicit Pacman(const Layout& layout) : Environment(layout) {
    require_main("pacman");
    const auto starts = layout.cells_of("pacman");
    if (starts.size() != 1) throw ConfigError("pacman layout needs exactly one pacman");
    start_ = starts.front();
    ghost_starts_ = layout.cells_of("ghost");
    pellet_cells_ = layout.cells_of("pellet");
    if (pellet_cells_.empty()) throw ConfigError("pacman layout needs at least one pellet");
    walls_ = layout.cells_of("wall");
    pacman_key_ = index_of("pacman");
    wall_key_ = index_of("wall");
    ghost_key_ = index_of("ghost");
    pellet_key_ = index_of("pellet");
    ghost_period_ = layout.get_int("ghost_period", 2);
    if (ghost_period_ < 1) throw ConfigError("ghost_period must be positive");
  }

  ActionSpace action_space() const override { return {4, {"right", "left", "up", "down"}}; }

  std::vector<double> reward_codomain() const override { return {10, -10, 1, 0}; }

  std::string state_key() const override {
    std::ostringstream out;
    out << pacman_.row << ',' << pacman_.col << ',' << ckf::direction_code(dir_) << ',' << clock_ << ',';
    for (bool p : pellets_) out << (p ? '1' : '0');
    for (const auto& g : ghosts_) out << ';' << g.cell.row << ',' << g.cell.col << ',' << g.dr << ',' << g.dc;
    out << ',' << terminal();
    return out.str();
  }

  int scripted_action() const override {
    auto ghost_near = [&](ckf::CellIndex c) {
      for (const auto& g : ghosts_) {
        if (std::abs(g.cell.row - c.row) + std::abs(g.cell.col - c.col) <= 1) return true;
      }
      return false;
    };
    const int move = bfs_first_move(
        layout().rows(), layout().cols(), pacman_, up(),
        [&](ckf::CellIndex c) { return !is_wall(c) && !ghost_near(c); },
        [&](ckf::CellIndex c) { return pellet_at(c); });
    return move < 0 ? kRight : move;
  }

  std::unique_ptr<Environment> clone() const override { return std::make_unique<Pacman>(*this); }

 protected:
  void on_reset(std::uint64_t seed) override {
    Rng rng(derive_seed(seed, "pacman.ghosts", 0));
    pacman_ = start_;
    dir_ = ckf::Direction::none;
    pellets_.assign(pellet_cells_.size(), true);
    remaining_ = static_cast<int>(pellet_cells_.size());
    clock_ = static_cast<int>(rng.below(static_cast<std::uint64_t>(ghost_period_)));
    ghosts_.clear();
    for (const auto& start : ghost_starts_) {
      Ghost g;
      g.cell = start;
      const bool vertical = rng.bernoulli(0.5);
      const int sign = rng.bernoulli(0.5) ? 1 : -1;
      g.dr = vertical ? sign : 0;
      g.dc = vertical ? 0 : sign;
      // Fall back to the other axis when the drawn one is walled in.
      if (!open(step_of(g.cell, g.dr, g.dc)) && !open(step_of(g.cell, -g.dr, -g.dc))) {
        std::swap(g.dr, g.dc);
      }
      ghosts_.push_back(g);
    }
  }

  Outcome on_step(int action) override {
    const int dr[4] = {0, 0, up(), -up()};
    const int dc[4] = {1, -1, 0, 0};
    const ckf::CellIndex before = pacman_;
    const ckf::CellIndex next = step_of(pacman_, dr[action], dc[action]);
    dir_ = ckf::direction_from_delta(dc[action], dr[action] * up());
    if (open(next)) pacman_ = next;

    // Ghosts move on their phase; contact before or after they move (or a
    // swap of cells) is fatal.
    if (hits_ghost(pacman_)) return {-10, TerminalKind::lose};
    clock_ = (clock_ + 1) % ghost_period_;
    if (clock_ == 0) {
      for (auto& g : ghosts_) {
        const ckf::CellIndex from = g.cell;
        move_ghost(g);
        if (g.cell == pacman_ || (g.cell == before && from == pacman_)) return {-10, TerminalKind::lose};
      }
    }

    for (std::size_t i = 0; i < pellet_cells_.size(); ++i) {
      if (pellets_[i] && pellet_cells_[i] == pacman_) {
        pellets_[i] = false;
        if (--remaining_ == 0) return {10, TerminalKind::win};
        return {1, TerminalKind::none};
      }
    }
    return {0, TerminalKind::none};
  }

  ckf::SemanticSet elements() const override {
    ckf::SemanticSet out;
    out.reserve(walls_.size() + pellet_cells_.size() + ghosts_.size() + 1);
    for (const auto& w : walls_) out.push_back(cell_element(wall_key_, w));
    for (std::size_t i = 0; i < pellet_cells_.size(); ++i) {
      if (pellets_[i]) out.push_back(cell_element(pellet_key_, pellet_cells_[i]));
    }
    for (const auto& g : ghosts_) {
      out.push_back(cell_element(ghost_key_, g.cell, 1, 1, ckf::direction_from_delta(g.dc, g.dr * up())));
    }
    out.push_back(cell_element(pacman_key_, pacman_, 1, 1, dir_));
    return out;
  }

 private:
  static ckf::CellIndex step_of(ckf::CellIndex c, int dr, int dc) { return {c.row + dr, c.col + dc}; }

  bool inside(ckf::CellIndex c) const {
    return c.row >= 0 && c.row < layout().rows() && c.col >= 0 && c.col < layout().cols();
  }
  bool is_wall(ckf::CellIndex c) const { return layout().name_at(c.row, c.col) == "wall"; }
  bool open(ckf::CellIndex c) const { return inside(c) && !is_wall(c); }

  bool pellet_at(ckf::CellIndex c) const {
    for (std::size_t i = 0; i < pellet_cells_.size(); ++i) {
      if (pellets_[i] && pellet_cells_[i] == c) return true;
    }
    return false;
  }

  bool hits_ghost(ckf::CellIndex c) const {
    for (const auto& g : ghosts_) {
      if (g.cell == c) return true;
    }
    return false;
  }

  void move_ghost(Ghost& g) const {
    if (!open(step_of(g.cell, g.dr, g.dc))) {
      g.dr = -g.dr;
      g.dc = -g.dc;
    }
    const auto next = step_of(g.cell, g.dr, g.dc);
    if (open(next)) g.cell = next;
  }

  ckf::CellIndex start_, pacman_;
  std::vector<ckf::CellIndex> ghost_starts_, pellet_cells_, walls_;
  std::vector<Ghost> ghosts_;
  std::vector<bool> pellets_;
  int remaining_ = 0;
  int clock_ = 0;
  int ghost_period_ = 2;
  ckf::Direction dir_ = ckf::Direction::none;
  int pacman_key_ = 1, wall_key_ = 0, ghost_key_ = 0, pellet_key_ = 0;
};

}  // namespace

std::unique_ptr<Environment> make_pacman(const Layout& layout) { return std::make_unique<Pacman>(layout); }

}  // namespace iota::envs::detail
