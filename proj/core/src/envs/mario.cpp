// Mario: side-scrolling platformer on a cell grid. Mario walks on ground,
// pipes and blocks, jumps up to two rows and falls one row per step. Falling
// into a hole or touching an enemy is fatal; reaching the flag wins.
//
// Legend: M=mario ==ground |=pipe B=block E=enemy c=coin F=flag H=hole C=cloud .=empty

#include <algorithm>
#include <sstream>

#include "games.hpp"
#include "iota/common/error.hpp"
#include "iota/common/rng.hpp"

namespace iota::envs::detail {
namespace {

enum Action { kRight, kLeft, kJump, kNoop };

constexpr int kJumpRows = 2;

struct Enemy {
  ckf::CellIndex cell;
  int dc = -1;
};

class Mario final : public Environment {
 public:
  explicit Mario(const Layout& layout) : Environment(layout) {
    require_main("mario");
    if (layout.y_axis != YAxis::up) throw ConfigError("mario layout must use y_axis: up");
    const auto starts = layout.cells_of("mario");
    const auto flags = layout.cells_of("flag");
    if (starts.size() != 1 || flags.empty()) throw ConfigError("mario layout needs one mario and a flag");
    start_ = starts.front();
    flag_col_ = flags.front().col;
    for (const auto& f : flags) flag_col_ = std::min(flag_col_, f.col);
    enemy_starts_ = layout.cells_of("enemy");
    coin_cells_ = layout.cells_of("coin");
    for (const char* name : {"ground", "pipe", "block", "flag", "hole", "cloud"}) {
      const int key = index_of(name);
      for (const auto& c : layout.cells_of(name)) statics_.push_back(cell_element(key, c));
    }
    mario_key_ = index_of("mario");
    enemy_key_ = index_of("enemy");
    coin_key_ = index_of("coin");
  }

  ActionSpace action_space() const override { return {4, {"right", "left", "jump", "noop"}}; }

  std::vector<double> reward_codomain() const override { return {10, -10, 1, 0}; }

  std::string state_key() const override {
    std::ostringstream out;
    out << mario_.row << ',' << mario_.col << ',' << rise_ << ',' << best_col_ << ','
        << ckf::direction_code(dir_) << ',' << clock_ << ',';
    for (bool c : coins_) out << (c ? '1' : '0');
    for (const auto& e : enemies_) out << ';' << e.cell.row << ',' << e.cell.col << ',' << e.dc;
    out << ',' << terminal();
    return out.str();
  }

  int scripted_action() const override {
    // Walk right; jump when something is in the way or the ground ends.
    const ckf::CellIndex ahead{mario_.row, mario_.col + 1};
    const ckf::CellIndex ahead2{mario_.row, mario_.col + 2};
    const ckf::CellIndex below_ahead{mario_.row - 1, mario_.col + 1};
    const bool blocked = solid(ahead) || enemy_at(ahead) || enemy_at(ahead2);
    const bool gap = !solid(below_ahead);
    if (supported() && rise_ == 0 && (blocked || gap)) return kJump;
    if (blocked && !supported()) return kNoop;
    return kRight;
  }

  std::unique_ptr<Environment> clone() const override { return std::make_unique<Mario>(*this); }

 protected:
  void on_reset(std::uint64_t seed) override {
    Rng rng(derive_seed(seed, "mario.enemies", 0));
    mario_ = start_;
    best_col_ = start_.col;
    rise_ = 0;
    dir_ = ckf::Direction::none;
    coins_.assign(coin_cells_.size(), true);
    clock_ = static_cast<int>(rng.below(2));
    enemies_.clear();
    for (const auto& c : enemy_starts_) enemies_.push_back({c, rng.bernoulli(0.5) ? 1 : -1});
  }

  Outcome on_step(int action) override {
    dir_ = ckf::Direction::none;
    int dx = 0;
    if (action == kRight || action == kLeft) {
      dx = action == kRight ? 1 : -1;
      const ckf::CellIndex next{mario_.row, mario_.col + dx};
      if (inside(next) && !solid(next)) mario_ = next;
    } else if (action == kJump && supported() && rise_ == 0) {
      rise_ = kJumpRows;
    }

    int dy = 0;
    if (rise_ > 0) {
      const ckf::CellIndex above{mario_.row + 1, mario_.col};
      if (inside(above) && !solid(above)) {
        mario_ = above;
        dy = 1;
        --rise_;
      } else {
        rise_ = 0;
      }
    } else if (!supported()) {
      --mario_.row;
      dy = -1;
    }
    if (dx != 0 || dy != 0) dir_ = ckf::direction_from_delta(dx, dy);

    if (mario_.row <= 0 || enemy_at(mario_)) return {-10, TerminalKind::lose};
    clock_ ^= 1;
    if (clock_ == 0) {
      for (auto& e : enemies_) move_enemy(e);
      if (enemy_at(mario_)) return {-10, TerminalKind::lose};
    }
    for (std::size_t i = 0; i < coin_cells_.size(); ++i) {
      if (coins_[i] && coin_cells_[i] == mario_) coins_[i] = false;
    }
    if (mario_.col >= flag_col_) return {10, TerminalKind::win};
    if (mario_.col > best_col_) {
      best_col_ = mario_.col;
      return {1, TerminalKind::none};
    }
    return {0, TerminalKind::none};
  }

  ckf::SemanticSet elements() const override {
    ckf::SemanticSet out = statics_;
    for (std::size_t i = 0; i < coin_cells_.size(); ++i) {
      if (coins_[i]) out.push_back(cell_element(coin_key_, coin_cells_[i]));
    }
    for (const auto& e : enemies_) {
      out.push_back(cell_element(enemy_key_, e.cell, 1, 1, ckf::direction_from_delta(e.dc, 0)));
    }
    out.push_back(cell_element(mario_key_, mario_, 1, 1, dir_));
    return out;
  }

 private:
  bool inside(ckf::CellIndex c) const {
    return c.row >= 0 && c.row < layout().rows() && c.col >= 0 && c.col < layout().cols();
  }

  bool solid(ckf::CellIndex c) const {
    if (!inside(c)) return false;
    const auto& name = layout().name_at(c.row, c.col);
    return name == "ground" || name == "pipe" || name == "block";
  }

  bool supported() const { return solid({mario_.row - 1, mario_.col}); }

  bool enemy_at(ckf::CellIndex c) const {
    return std::any_of(enemies_.begin(), enemies_.end(), [&](const Enemy& e) { return e.cell == c; });
  }

  // Enemies turn around at walls and ledges.
  void move_enemy(Enemy& e) const {
    auto passable = [&](int dc) {
      const ckf::CellIndex next{e.cell.row, e.cell.col + dc};
      return inside(next) && !solid(next) && solid({next.row - 1, next.col});
    };
    if (!passable(e.dc)) e.dc = -e.dc;
    if (passable(e.dc)) e.cell.col += e.dc;
  }

  ckf::CellIndex start_, mario_;
  int flag_col_ = 0;
  int best_col_ = 0;
  int rise_ = 0;
  int clock_ = 0;
  ckf::Direction dir_ = ckf::Direction::none;
  std::vector<ckf::CellIndex> enemy_starts_, coin_cells_;
  std::vector<Enemy> enemies_;
  std::vector<bool> coins_;
  ckf::SemanticSet statics_;
  int mario_key_ = 1, enemy_key_ = 0, coin_key_ = 0;
};

}  // namespace

std::unique_ptr<Environment> make_mario(const Layout& layout) { return std::make_unique<Mario>(layout); }

}  // namespace iota::envs::detail
