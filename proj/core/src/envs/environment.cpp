#include "iota/envs/environment.hpp"

#include <algorithm>

#include "games.hpp"
#include "iota/common/error.hpp"

namespace iota::envs {

std::string to_string(TerminalKind kind) {
  switch (kind) {
    case TerminalKind::none: return "none";
    case TerminalKind::win: return "win";
    case TerminalKind::lose: return "lose";
    case TerminalKind::timeout: return "timeout";
  }
  return "?";
}

ckf::TokenParams EnvFrame::token_params() const {
  return ckf::TokenParams::make(registry->size(), screen_w, screen_h, cell, cell);
}

int ActionSpace::index_of(std::string_view name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw DomainError("unknown action '" + std::string(name) + "'");
  return static_cast<int>(it - names.begin());
}

Environment::Environment(Layout layout)
    : layout_(std::make_shared<const Layout>(std::move(layout))),
      registry_(std::make_shared<const ckf::Registry>(layout_->registry)) {}

EnvFrame Environment::reset(std::uint64_t seed) {
  steps_ = 0;
  terminal_ = false;
  started_ = true;
  on_reset(seed);
  return frame();
}

StepResult Environment::step(int action) {
  if (!started_) throw StateError("step() before reset()");
  if (terminal_) throw StateError("step() after the episode ended");
  if (action < 0 || action >= action_space().n) {
    throw DomainError("action " + std::to_string(action) + " out of range for " + name());
  }
  const Outcome outcome = on_step(action);
  ++steps_;
  StepResult result;
  result.reward = outcome.reward;
  result.terminal_kind = outcome.kind;
  if (result.terminal_kind == TerminalKind::none && steps_ >= max_steps_) {
    result.terminal_kind = TerminalKind::timeout;
  }
  result.terminal = result.terminal_kind != TerminalKind::none;
  terminal_ = result.terminal;
  result.frame = frame();
  return result;
}

EnvFrame Environment::frame() const {
  EnvFrame f;
  f.elements = elements();
  f.screen_w = layout_->screen_w();
  f.screen_h = layout_->screen_h();
  f.cell = layout_->cell;
  f.registry = registry_;
  f.y_axis = layout_->y_axis;
  return f;
}

ckf::TokenParams Environment::token_params() const {
  return ckf::TokenParams::make(registry_->size(), layout_->screen_w(), layout_->screen_h(), layout_->cell,
                                layout_->cell);
}

ckf::SemanticElement Environment::cell_element(int index, ckf::CellIndex cell, int w_cells, int h_cells,
                                               ckf::Direction dir) const {
  ckf::SemanticElement e;
  e.index = index;
  e.name = registry_->name_of(index);
  e.x = cell.col * layout_->cell;
  e.y = cell.row * layout_->cell;
  e.w = w_cells * layout_->cell;
  e.h = h_cells * layout_->cell;
  e.direction = dir;
  return e;
}

void Environment::require_main(std::string_view element) const {
  if (registry_->find(element) != 1) {
    throw ConfigError("layout '" + name() + "' must register '" + std::string(element) + "' first");
  }
}

int Environment::underlay_key(ckf::CellIndex cell) const {
  const ckf::Ckf under = ckf::build_underlay(elements(), token_params());
  return under.key_at(cell.row, cell.col);
}

std::vector<std::string> environment_names() {
  return {"mario", "pacman", "flappybirds", "taxidriver", "scararobot"};
}

std::unique_ptr<Environment> make_environment(const Layout& layout) {
  if (layout.name == "mario") return detail::make_mario(layout);
  if (layout.name == "pacman") return detail::make_pacman(layout);
  if (layout.name == "flappybirds") return detail::make_flappybirds(layout);
  if (layout.name == "taxidriver") return detail::make_taxidriver(layout);
  if (layout.name == "scararobot") return detail::make_scararobot(layout);
  throw ConfigError("unknown environment '" + layout.name + "'");
}

std::unique_ptr<Environment> make_environment(std::string_view name, const std::string& asset_dir) {
  const auto names = environment_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw ConfigError("unknown environment '" + std::string(name) + "'");
  }
  return make_environment(load_layout(layout_path(name, asset_dir)));
}

}  // namespace iota::envs
