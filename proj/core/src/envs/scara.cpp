// ScaraRobot: a planar two-link arm seen from above. The end effector moves
// in sub-cell steps inside the reachable annulus of the arm; it must pick the
// object and drop it on the target. Touching an obstacle or picking/dropping
// over an empty cell ends the episode.
//
// Legend: S=scara (end effector start) K=base #=obstacle X=object T=target .=empty
// Header: links: <l1>,<l2> (pixels), step: <pixels per move>

#include <cmath>
#include <deque>
#include <map>
#include <sstream>

#include "games.hpp"
#include "iota/common/error.hpp"

namespace iota::envs::detail {
namespace {

enum Action { kRight, kLeft, kUp, kDown, kPick, kDrop };

struct Point {
  int x = 0;
  int y = 0;
  friend bool operator<(const Point& a, const Point& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }
  friend bool operator==(const Point&, const Point&) = default;
};

class ScaraRobot final : public Environment {
 public:
  explicit ScaraRobot(const Layout& layout) : Environment(layout) {
    require_main("scara");
    const auto starts = layout.cells_of("scara");
    const auto bases = layout.cells_of("base");
    const auto objects = layout.cells_of("object");
    const auto targets = layout.cells_of("target");
    if (starts.size() != 1 || bases.size() != 1 || objects.size() != 1 || targets.size() != 1) {
      throw ConfigError("scararobot layout needs exactly one scara, base, object and target");
    }
    cell_ = static_cast<int>(layout.cell);
    start_ = {starts.front().col * cell_, starts.front().row * cell_};
    base_ = bases.front();
    object_ = objects.front();
    target_ = targets.front();
    obstacles_ = layout.cells_of("obstacle");
    const auto links = layout.get_ints("links");
    if (links.size() != 2 || links[0] <= 0 || links[1] <= 0) throw ConfigError("links: needs two lengths");
    l1_ = links[0];
    l2_ = links[1];
    step_ = layout.get_int("step", cell_ / 2);
    if (step_ <= 0 || cell_ % step_ != 0) throw ConfigError("step must divide the cell size");
    if (!reachable(start_)) throw ConfigError("scararobot start is outside the arm's reach");
    keys_ = {index_of("scara"), index_of("base"), index_of("elbow"), index_of("obstacle"),
             index_of("object"), index_of("target")};
  }

  ActionSpace action_space() const override {
    return {6, {"right", "left", "up", "down", "pick", "drop"}};
  }

  std::vector<double> reward_codomain() const override { return {10, 1, 0}; }

  std::string state_key() const override {
    std::ostringstream out;
    out << effector_.x << ',' << effector_.y << ',' << holding_ << ',' << ckf::direction_code(dir_) << ','
        << terminal();
    return out.str();
  }

  int scripted_action() const override {
    const ckf::CellIndex goal = holding_ ? target_ : object_;
    if (cell_of(effector_) == goal) return holding_ ? kDrop : kPick;
    // Breadth-first search over the effector lattice.
    std::map<Point, int> first;
    std::deque<Point> queue{effector_};
    first[effector_] = -1;
    while (!queue.empty()) {
      const Point cur = queue.front();
      queue.pop_front();
      const int f = first[cur];
      if (!(cur == effector_) && cell_of(cur) == goal) return f;
      for (int a = kRight; a <= kDown; ++a) {
        const Point next = moved(cur, a);
        if (!reachable(next) || is_obstacle(cell_of(next)) || first.count(next)) continue;
        first[next] = f < 0 ? a : f;
        queue.push_back(next);
      }
    }
    return kRight;
  }

  std::unique_ptr<Environment> clone() const override { return std::make_unique<ScaraRobot>(*this); }

 protected:
  void on_reset(std::uint64_t) override {
    effector_ = start_;
    holding_ = false;
    dir_ = ckf::Direction::none;
  }

  Outcome on_step(int action) override {
    if (action <= kDown) {
      const Point next = moved(effector_, action);
      dir_ = ckf::Direction::none;
      if (!reachable(next)) return {0, TerminalKind::none};
      const double before = goal_distance(effector_);
      dir_ = ckf::direction_from_delta(next.x - effector_.x, (next.y - effector_.y) * up());
      effector_ = next;
      if (is_obstacle(cell_of(effector_))) return {0, TerminalKind::lose};
      return {goal_distance(effector_) < before ? 1.0 : 0.0, TerminalKind::none};
    }
    dir_ = ckf::Direction::none;
    const ckf::CellIndex here = cell_of(effector_);
    const bool empty_cell = underlay_key(here) == 0;
    if (action == kPick) {
      if (!holding_ && here == object_) {
        holding_ = true;
        return {10, TerminalKind::none};
      }
    } else if (holding_ && here == target_) {
      holding_ = false;
      return {10, TerminalKind::win};
    }
    return {0, empty_cell ? TerminalKind::lose : TerminalKind::none};
  }

  ckf::SemanticSet elements() const override {
    ckf::SemanticSet out;
    out.reserve(obstacles_.size() + 5);
    out.push_back(cell_element(keys_.base, base_));
    out.push_back(elbow_element());
    for (const auto& o : obstacles_) out.push_back(cell_element(keys_.obstacle, o));
    if (!holding_) out.push_back(cell_element(keys_.object, object_));
    out.push_back(cell_element(keys_.target, target_));
    ckf::SemanticElement effector;
    effector.index = keys_.scara;
    effector.name = registry()->name_of(keys_.scara);
    effector.x = effector_.x;
    effector.y = effector_.y;
    effector.w = cell_;
    effector.h = cell_;
    effector.direction = dir_;
    out.push_back(effector);
    return out;
  }

 private:
  struct Keys {
    int scara, base, elbow, obstacle, object, target;
  };

  Point moved(Point p, int action) const {
    switch (action) {
      case kRight: return {p.x + step_, p.y};
      case kLeft: return {p.x - step_, p.y};
      case kUp: return {p.x, p.y + step_ * up()};
      default: return {p.x, p.y - step_ * up()};
    }
  }

  ckf::CellIndex cell_of(Point p) const { return {p.y / cell_, p.x / cell_}; }

  bool is_obstacle(ckf::CellIndex c) const { return layout().name_at(c.row, c.col) == "obstacle"; }

  double base_x() const { return base_.col * cell_ + cell_ / 2.0; }
  double base_y() const { return base_.row * cell_ + cell_ / 2.0; }

  bool reachable(Point p) const {
    if (p.x < 0 || p.y < 0 || p.x > layout().screen_w() - cell_ || p.y > layout().screen_h() - cell_) return false;
    const double d = std::hypot(p.x + cell_ / 2.0 - base_x(), p.y + cell_ / 2.0 - base_y());
    return d >= std::abs(l1_ - l2_) && d <= l1_ + l2_;
  }

  double goal_distance(Point p) const {
    const ckf::CellIndex g = holding_ ? target_ : object_;
    return std::hypot(p.x + cell_ / 2.0 - (g.col * cell_ + cell_ / 2.0),
                      p.y + cell_ / 2.0 - (g.row * cell_ + cell_ / 2.0));
  }

  // Elbow from the closed-form inverse kinematics (elbow counter-clockwise
  // of the base-effector line), snapped to whole pixels.
  ckf::SemanticElement elbow_element() const {
    const double ex = effector_.x + cell_ / 2.0 - base_x();
    const double ey = effector_.y + cell_ / 2.0 - base_y();
    const double d = std::max(std::hypot(ex, ey), 1e-9);
    const double c = std::clamp((l1_ * l1_ + d * d - l2_ * l2_) / (2.0 * l1_ * d), -1.0, 1.0);
    const double angle = std::atan2(ey, ex) + std::acos(c);
    const double px = base_x() + l1_ * std::cos(angle) - cell_ / 2.0;
    const double py = base_y() + l1_ * std::sin(angle) - cell_ / 2.0;
    ckf::SemanticElement e;
    e.index = keys_.elbow;
    e.name = registry()->name_of(keys_.elbow);
    e.x = std::clamp(std::floor(px), 0.0, layout().screen_w() - cell_);
    e.y = std::clamp(std::floor(py), 0.0, layout().screen_h() - cell_);
    e.w = cell_;
    e.h = cell_;
    return e;
  }

  int cell_ = 16;
  int l1_ = 0, l2_ = 0, step_ = 8;
  Point start_, effector_;
  ckf::CellIndex base_, object_, target_;
  std::vector<ckf::CellIndex> obstacles_;
  bool holding_ = false;
  ckf::Direction dir_ = ckf::Direction::none;
  Keys keys_{};
};

}  // namespace

std::unique_ptr<Environment> make_scararobot(const Layout& layout) {
  return std::make_unique<ScaraRobot>(layout);
}

}  // namespace iota::envs::detail
