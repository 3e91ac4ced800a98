// FlappyBirds: the bird stays in a fixed column while pipes scroll left. Fly
// lifts the bird half a cell, fall drops it a quarter cell. Touching a pipe,
// the floor or the ceiling is fatal; clearing the last pipe wins.
//
// Legend: b=bird _=floor ^=ceiling .=empty
// Header: gaps: <bottom row of each gap>, gap_height, pipe_spacing (cells),
// first_pipe (column of the first pipe at reset), scroll, fly, fall (pixels).

#include <sstream>

#include "games.hpp"
#include "iota/common/error.hpp"

namespace iota::envs::detail {
namespace {

enum Action { kFly, kFall };

class FlappyBirds final : public Environment {
 public:
  explicit FlappyBirds(const Layout& layout) : Environment(layout) {
    require_main("bird");
    if (layout.y_axis != YAxis::up) throw ConfigError("flappybirds layout must use y_axis: up");
    const auto birds = layout.cells_of("bird");
    if (birds.size() != 1) throw ConfigError("flappybirds layout needs exactly one bird");
    cell_ = static_cast<int>(layout.cell);
    bird_col_ = birds.front().col;
    start_y_ = birds.front().row * cell_;
    gaps_ = layout.get_ints("gaps");
    gap_height_ = layout.get_int("gap_height", 3);
    spacing_ = layout.get_int("pipe_spacing", 6);
    first_col_ = layout.get_int("first_pipe", 8);
    scroll_ = layout.get_int("scroll", 2);
    fly_ = layout.get_int("fly", 8);
    fall_ = layout.get_int("fall", 4);
    if (gaps_.empty()) throw ConfigError("flappybirds layout needs gaps");
    for (int g : gaps_) {
      if (g < 2 || g + gap_height_ > layout.rows() - 2) throw ConfigError("flappybirds gap out of range");
    }
    if (scroll_ <= 0 || fly_ <= 0 || fall_ <= 0 || spacing_ <= 1) throw ConfigError("flappybirds speeds must be positive");
    for (const char* name : {"floor", "ceiling"}) {
      const int key = index_of(name);
      for (const auto& c : layout.cells_of(name)) statics_.push_back(cell_element(key, c));
    }
    bird_key_ = index_of("bird");
    upper_key_ = index_of("pipe_up");
    lower_key_ = index_of("pipe_down");
  }

  ActionSpace action_space() const override { return {2, {"fly", "fall"}}; }

  std::vector<double> reward_codomain() const override { return {10, -10, 1, 0}; }

  std::string state_key() const override {
    std::ostringstream out;
    out << y_ << ',' << offset_ << ',' << passed_ << ',' << rotation_ << ',' << ckf::direction_code(dir_) << ','
        << terminal();
    return out.str();
  }

  int scripted_action() const override {
    // Aim for the middle of the next gap, one step ahead.
    const int next = std::min<int>(passed_, static_cast<int>(gaps_.size()) - 1);
    const int target = (gap_of(next) * cell_) + (gap_height_ * cell_) / 2 - cell_ / 2;
    return y_ - fall_ >= target ? kFall : kFly;
  }

  std::unique_ptr<Environment> clone() const override { return std::make_unique<FlappyBirds>(*this); }

 protected:
  void on_reset(std::uint64_t seed) override {
    y_ = start_y_;
    offset_ = 0;
    passed_ = 0;
    rotation_ = static_cast<int>(seed % gaps_.size());
    dir_ = ckf::Direction::none;
  }

  Outcome on_step(int action) override {
    y_ += action == kFly ? fly_ : -fall_;
    dir_ = action == kFly ? ckf::Direction::north : ckf::Direction::south;
    offset_ += scroll_;
    const int row = y_ >= 0 ? y_ / cell_ : -1;
    if (row <= 0 || row >= layout().rows() - 1) return {-10, TerminalKind::lose};
    const int n = static_cast<int>(gaps_.size());
    for (int i = passed_; i < n; ++i) {
      const int col = pipe_col(i);
      if (col > bird_col_) break;
      if (col == bird_col_ && (row < gap_of(i) || row >= gap_of(i) + gap_height_)) {
        return {-10, TerminalKind::lose};
      }
    }
    if (passed_ < n && pipe_col(passed_) < bird_col_) {
      if (++passed_ == n) return {10, TerminalKind::win};
      return {1, TerminalKind::none};
    }
    return {0, TerminalKind::none};
  }

  ckf::SemanticSet elements() const override {
    ckf::SemanticSet out = statics_;
    const int top = layout().rows() - 2;  // highest row below the ceiling
    for (int i = passed_; i < static_cast<int>(gaps_.size()); ++i) {
      const int x = pipe_x(i);
      if (x < 0) continue;
      if (x >= layout().screen_w()) break;
      const int gap = gap_of(i);
      out.push_back(pipe(lower_key_, x, 1, gap - 1));
      out.push_back(pipe(upper_key_, x, gap + gap_height_, top));
    }
    ckf::SemanticElement bird;
    bird.index = bird_key_;
    bird.name = registry()->name_of(bird_key_);
    bird.x = bird_col_ * cell_;
    bird.y = y_;
    bird.w = cell_;
    bird.h = cell_;
    bird.direction = dir_;
    out.push_back(bird);
    return out;
  }

 private:
  int gap_of(int i) const { return gaps_[static_cast<std::size_t>((i + rotation_) % static_cast<int>(gaps_.size()))]; }
  int pipe_x(int i) const { return (first_col_ + i * spacing_) * cell_ - offset_; }
  int pipe_col(int i) const {
    const int x = pipe_x(i);
    return x >= 0 ? x / cell_ : -1;
  }

  // Pipe column covering rows [from, to].
  ckf::SemanticElement pipe(int key, int x, int from, int to) const {
    ckf::SemanticElement e;
    e.index = key;
    e.name = registry()->name_of(key);
    e.x = x;
    e.y = from * cell_;
    e.w = cell_;
    e.h = (to - from + 1) * cell_;
    return e;
  }

  int cell_ = 16;
  int bird_col_ = 2;
  int start_y_ = 0;
  std::vector<int> gaps_;
  int gap_height_ = 3, spacing_ = 6, first_col_ = 8, scroll_ = 2, fly_ = 8, fall_ = 4;
  int y_ = 0, offset_ = 0, passed_ = 0, rotation_ = 0;
  ckf::Direction dir_ = ckf::Direction::none;
  ckf::SemanticSet statics_;
  int bird_key_ = 1, upper_key_ = 0, lower_key_ = 0;
};

}  // namespace

std::unique_ptr<Environment> make_flappybirds(const Layout& layout) {
  return std::make_unique<FlappyBirds>(layout);
}

}  // namespace iota::envs::detail
