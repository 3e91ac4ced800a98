#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iota/agents/agent_kind.hpp"
#include "iota/agents/learner.hpp"
#include "iota/agents/trainer.hpp"

namespace iota::harness {

enum class Stage { episodes, epochs, lambda_sweep };

std::string to_string(Stage s);  // "1", "2", "lambda-sweep"

// Line-oriented `key: value` experiment description. `layout:` and
// `rules:` name asset files relative to the config file; without them the
// shipped assets of `env` are used.
//
//   name: taxi-stage2
//   stage: 2
//   env: taxidriver
//   agents: IDQN, DQN
//   seeds: 1, 2, 3
//   epochs: 100
//   output: out/taxi
struct ExperimentSpec {
  std::string name = "experiment";
  Stage stage = Stage::epochs;
  std::string env;
  std::vector<agents::AgentKind> agents;
  std::vector<std::uint64_t> seeds = {1, 2, 3};
  int episodes = 2000;
  int epochs = 200;
  int steps_per_epoch = agents::kStepsPerEpoch;
  double lambda = 1.0;
  std::vector<double> lambdas = {0, 0.5, 1, 5, 10};
  std::string output = "out";
  std::optional<std::string> layout;  // as written in the file
  std::optional<std::string> rules;
  bool timing = false;
  int checkpoint_every = 50;
  agents::AgentConfig agent;

  // Directory of the config file; include paths are resolved against it.
  std::string base_dir = ".";

  int units() const { return stage == Stage::episodes ? episodes : epochs; }
  std::string layout_file(const std::string& asset_dir) const;
  std::string rules_file(const std::string& asset_dir) const;
  std::string output_dir() const;

  // Equality over everything that is printed (base_dir excluded).
  bool same_as(const ExperimentSpec& other) const;
};

// Throws ParseError (with line) on malformed lines and ConfigError on
// unknown keys or invalid values.
ExperimentSpec parse_spec(std::string_view text, const std::string& base_dir = ".");
ExperimentSpec load_spec(const std::string& path);

// Canonical text, every key in a fixed order. parse_spec(format_spec(s))
// reproduces s bit for bit, reals included.
std::string format_spec(const ExperimentSpec& spec);

// Shortest text that parses back to the same double.
std::string format_real(double value);

}  // namespace iota::harness
