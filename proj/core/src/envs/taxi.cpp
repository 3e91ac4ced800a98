// TaxiDriver: drive to the passenger, pick them up, drop them at the
// destination. Driving into a wall or picking/dropping over an empty cell
// ends the episode.
//
// Legend: T=taxi #=wall P=passenger D=destination .=empty

#include <sstream>

#include "games.hpp"
#include "iota/common/error.hpp"

namespace iota::envs::detail {
namespace {

enum Action { kRight, kLeft, kUp, kDown, kPick, kDrop };

class TaxiDriver final : public Environment {
 public:
  explicit TaxiDriver(const Layout& layout) : Environment(layout) {
    const auto taxis = layout.cells_of("taxi");
    const auto passengers = layout.cells_of("passenger");
    const auto destinations = layout.cells_of("destination");
    if (taxis.size() != 1 || passengers.size() != 1 || destinations.size() != 1) {
      throw ConfigError("taxidriver layout needs exactly one taxi, passenger and destination");
    }
    require_main("taxi");
    start_ = taxis.front();
    passenger_ = passengers.front();
    destination_ = destinations.front();
    walls_ = layout.cells_of("wall");
    taxi_key_ = index_of("taxi");
    wall_key_ = index_of("wall");
    passenger_key_ = index_of("passenger");
    destination_key_ = index_of("destination");
  }

  ActionSpace action_space() const override {
    return {6, {"right", "left", "up", "down", "pick", "drop"}};
  }

  std::vector<double> reward_codomain() const override { return {10, 0}; }

  std::string state_key() const override {
    std::ostringstream out;
    out << taxi_.row << ',' << taxi_.col << ',' << carrying_ << ',' << ckf::direction_code(dir_) << ','
        << terminal();
    return out.str();
  }

  int scripted_action() const override {
    const ckf::CellIndex goal = carrying_ ? destination_ : passenger_;
    if (taxi_ == goal) return carrying_ ? kDrop : kPick;
    const int move = bfs_first_move(layout().rows(), layout().cols(), taxi_, up(),
                                    [&](ckf::CellIndex c) { return !is_wall(c); },
                                    [&](ckf::CellIndex c) { return c == goal; });
    return move < 0 ? kRight : move;
  }

  std::unique_ptr<Environment> clone() const override { return std::make_unique<TaxiDriver>(*this); }

 protected:
  void on_reset(std::uint64_t) override {
    taxi_ = start_;
    carrying_ = false;
    dir_ = ckf::Direction::none;
  }

  Outcome on_step(int action) override {
    if (action <= kDown) {
      const int dr[4] = {0, 0, up(), -up()};
      const int dc[4] = {1, -1, 0, 0};
      const ckf::CellIndex next{taxi_.row + dr[action], taxi_.col + dc[action]};
      dir_ = ckf::direction_from_delta(dc[action], dr[action] * up());
      if (!layout_contains(next) || is_wall(next)) return {0, TerminalKind::lose};
      taxi_ = next;
      return {0, TerminalKind::none};
    }
    dir_ = ckf::Direction::none;
    const bool empty_cell = underlay_key(taxi_) == 0;
    if (action == kPick) {
      if (!carrying_ && taxi_ == passenger_) {
        carrying_ = true;
        return {10, TerminalKind::none};
      }
    } else if (carrying_ && taxi_ == destination_) {
      carrying_ = false;
      return {10, TerminalKind::win};
    }
    return {0, empty_cell ? TerminalKind::lose : TerminalKind::none};
  }

  ckf::SemanticSet elements() const override {
    ckf::SemanticSet out;
    out.reserve(walls_.size() + 3);
    for (const auto& w : walls_) out.push_back(cell_element(wall_key_, w));
    if (!carrying_) out.push_back(cell_element(passenger_key_, passenger_));
    out.push_back(cell_element(destination_key_, destination_));
    out.push_back(cell_element(taxi_key_, taxi_, 1, 1, dir_));
    return out;
  }

 private:
  bool layout_contains(ckf::CellIndex c) const {
    return c.row >= 0 && c.row < layout().rows() && c.col >= 0 && c.col < layout().cols();
  }
  bool is_wall(ckf::CellIndex c) const { return layout().name_at(c.row, c.col) == "wall"; }

  ckf::CellIndex start_, passenger_, destination_, taxi_;
  std::vector<ckf::CellIndex> walls_;
  bool carrying_ = false;
  ckf::Direction dir_ = ckf::Direction::none;
  int taxi_key_ = 1, wall_key_ = 0, passenger_key_ = 0, destination_key_ = 0;
};

}  // namespace

std::unique_ptr<Environment> make_taxidriver(const Layout& layout) {
  return std::make_unique<TaxiDriver>(layout);
}

}  // namespace iota::envs::detail
