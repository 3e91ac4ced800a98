#pragma once

#include <array>
#include <string>
#include <string_view>

#include "iota/nn/network.hpp"

namespace iota::agents {

enum class AgentKind { dqn, ddqn, dudqn, dddqn, idqn, iddqn, idudqn, idddqn };

inline constexpr std::array<AgentKind, 8> kAllAgents = {
    AgentKind::dqn,  AgentKind::ddqn,  AgentKind::dudqn,  AgentKind::dddqn,
    AgentKind::idqn, AgentKind::iddqn, AgentKind::idudqn, AgentKind::idddqn};

// Canonical spelling, e.g. "IDuDQN".
std::string to_string(AgentKind kind);
// Case-insensitive; throws ConfigError for unknown names.
AgentKind parse_agent_kind(std::string_view name);

// Uses affordance masks and the affordance loss.
constexpr bool is_iecr(AgentKind k) { return static_cast<int>(k) >= static_cast<int>(AgentKind::idqn); }
constexpr bool is_dueling(AgentKind k) {
  return k == AgentKind::dudqn || k == AgentKind::dddqn || k == AgentKind::idudqn || k == AgentKind::idddqn;
}
// Double-DQN style target.
constexpr bool is_double(AgentKind k) {
  return k == AgentKind::ddqn || k == AgentKind::dddqn || k == AgentKind::iddqn || k == AgentKind::idddqn;
}
constexpr nn::Head head_of(AgentKind k) { return is_dueling(k) ? nn::Head::dueling : nn::Head::single; }

}  // namespace iota::agents
