#include "iota/agents/agent_kind.hpp"

#include <algorithm>
#include <cctype>

#include "iota/common/error.hpp"

namespace iota::agents {

std::string to_string(AgentKind kind) {
  switch (kind) {
    case AgentKind::dqn: return "DQN";
    case AgentKind::ddqn: return "DDQN";
    case AgentKind::dudqn: return "DuDQN";
    case AgentKind::dddqn: return "DDDQN";
    case AgentKind::idqn: return "IDQN";
    case AgentKind::iddqn: return "IDDQN";
    case AgentKind::idudqn: return "IDuDQN";
    case AgentKind::idddqn: return "IDDDQN";
  }
  return "?";
}

AgentKind parse_agent_kind(std::string_view name) {
  auto lower = [](std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
  };
  const auto wanted = lower(name);
  for (AgentKind k : kAllAgents) {
    if (lower(to_string(k)) == wanted) return k;
  }
  throw ConfigError("unknown agent '" + std::string(name) + "'");
}

}  // namespace iota::agents
