#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "iota/ckf/ckf.hpp"
#include "iota/ckf/registry.hpp"
#include "iota/envs/layout.hpp"

namespace iota::envs {

inline constexpr int kMaxEpisodeSteps = 3000;

enum class TerminalKind { none, win, lose, timeout };
std::string to_string(TerminalKind kind);

// Everything visible in one frame, plus what the tokenizer needs to read it.
struct EnvFrame {
  ckf::SemanticSet elements;
  double screen_w = 0;
  double screen_h = 0;
  double cell = 16;
  std::shared_ptr<const ckf::Registry> registry;
  YAxis y_axis = YAxis::up;

  ckf::TokenParams token_params() const;
};

struct StepResult {
  EnvFrame frame;
  double reward = 0;
  bool terminal = false;
  TerminalKind terminal_kind = TerminalKind::none;
};

struct ActionSpace {
  int n = 0;
  std::vector<std::string> names;

  int index_of(std::string_view name) const;  // throws DomainError
};

// Base class of the five games. Instances are single-threaded mutable state;
// clone() gives an independent copy (used for evaluation and reachability
// enumeration).
class Environment {
 public:
  explicit Environment(Layout layout);
  virtual ~Environment() = default;

  // Same seed, same layout and same dynamics.
  EnvFrame reset(std::uint64_t seed);
  // Throws StateError after a terminal step and DomainError for an invalid
  // action. The episode is cut with TerminalKind::timeout at max_steps().
  StepResult step(int action);

  EnvFrame frame() const;
  bool terminal() const { return terminal_; }
  int steps() const { return steps_; }
  int max_steps() const { return max_steps_; }
  void set_max_steps(int n) { max_steps_ = n; }

  const std::string& name() const { return layout_->name; }
  const Layout& layout() const { return *layout_; }
  const std::shared_ptr<const ckf::Registry>& registry() const { return registry_; }
  ckf::TokenParams token_params() const;

  virtual ActionSpace action_space() const = 0;
  // Rewards the game can emit.
  virtual std::vector<double> reward_codomain() const = 0;
  // Hashable description of the dynamic state, excluding the step counter.
  virtual std::string state_key() const = 0;
  // Hand-written reference policy for smoke tests.
  virtual int scripted_action() const = 0;
  virtual std::unique_ptr<Environment> clone() const = 0;

 protected:
  struct Outcome {
    double reward = 0;
    TerminalKind kind = TerminalKind::none;
  };

  virtual void on_reset(std::uint64_t seed) = 0;
  virtual Outcome on_step(int action) = 0;
  virtual ckf::SemanticSet elements() const = 0;

  // Row delta that moves one cell towards the top of the screen.
  int up() const { return layout_->y_axis == YAxis::up ? 1 : -1; }
  int index_of(std::string_view element) const { return registry_->index_of(element); }
  // Throws ConfigError unless `element` is registered first (key index 1).
  void require_main(std::string_view element) const;
  // Element covering cells [cell.row, cell.row + h_cells) x [cell.col, cell.col + w_cells).
  ckf::SemanticElement cell_element(int index, ckf::CellIndex cell, int w_cells = 1, int h_cells = 1,
                                    ckf::Direction dir = ckf::Direction::none) const;
  // Underlay key at a cell of the current frame (0 = nothing under the agent).
  int underlay_key(ckf::CellIndex cell) const;

 private:
  std::shared_ptr<const Layout> layout_;
  std::shared_ptr<const ckf::Registry> registry_;
  int steps_ = 0;
  int max_steps_ = kMaxEpisodeSteps;
  bool terminal_ = false;
  bool started_ = false;
};

std::vector<std::string> environment_names();

// Builds the game named by layout.name.
std::unique_ptr<Environment> make_environment(const Layout& layout);
// Loads the shipped layout of a game.
std::unique_ptr<Environment> make_environment(std::string_view name,
                                              const std::string& asset_dir = default_asset_dir());

}  // namespace iota::envs
