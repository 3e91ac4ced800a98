#include "iota/affordance/rules.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "iota/common/error.hpp"

namespace iota::affordance {

RuleSet::RuleSet(int n_actions, std::vector<Rule> rules) : n_actions_(n_actions) {
  if (n_actions <= 0) throw DomainError("rule set needs at least one action");
  by_action_.resize(static_cast<std::size_t>(n_actions));
  for (const Rule& r : rules) add(r);
}

const std::vector<Rule>& RuleSet::for_action(int action) const {
  if (action < 0 || action >= n_actions_) throw DomainError("action index out of range");
  return by_action_[static_cast<std::size_t>(action)];
}

bool RuleSet::add(const Rule& rule) {
  if (rule.action < 0 || rule.action >= n_actions_) {
    throw DomainError("rule action " + std::to_string(rule.action) + " out of range");
  }
  if (rule.key_index < 0) throw DomainError("rule key must be non-negative");
  if (std::find(rules_.begin(), rules_.end(), rule) != rules_.end()) return false;
  rules_.push_back(rule);
  by_action_[static_cast<std::size_t>(rule.action)].push_back(rule);
  return true;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

int parse_range(std::string_view field, int line_no) {
  std::string_view digits = field;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
    throw ParseError(line_no, "expected an integer range, got '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

ParsedRules parse_ruleset(std::string_view text, const std::vector<std::string>& action_names,
                          const ckf::Registry& registry) {
  ParsedRules out;
  out.rules = RuleSet(static_cast<int>(action_names.size()), {});
  std::vector<std::string> unknown;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    const auto fields = split_fields(line);
    if (fields.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (fields.size() != 4) {
      throw ParseError(line_no, "expected 'action element phi alpha', got " +
                                    std::to_string(fields.size()) + " fields");
    }
    const int phi = parse_range(fields[2], line_no);
    const int alpha = parse_range(fields[3], line_no);

    const auto action = std::find(action_names.begin(), action_names.end(), fields[0]);
    const auto key = registry.find(fields[1]);
    if (action == action_names.end()) {
      unknown.push_back("line " + std::to_string(line_no) + ": unknown action '" +
                        std::string(fields[0]) + "'");
    }
    if (!key) {
      unknown.push_back("line " + std::to_string(line_no) + ": unknown element '" +
                        std::string(fields[1]) + "'");
    }
    if (action != action_names.end() && key) {
      const Rule rule{static_cast<int>(action - action_names.begin()), *key, phi, alpha};
      if (!out.rules.add(rule)) {
        out.warnings.push_back("line " + std::to_string(line_no) + ": duplicate rule ignored");
      }
    }
    if (end == text.size()) break;
  }

  if (!unknown.empty()) {
    std::string message = "rule file references unknown names:";
    for (const auto& u : unknown) message += "\n  " + u;
    throw ConfigError(message);
  }
  return out;
}

ParsedRules load_ruleset(const std::string& path, const std::vector<std::string>& action_names,
                         const ckf::Registry& registry) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open rule file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_ruleset(buffer.str(), action_names, registry);
}

std::string format_ruleset(const RuleSet& rules, const std::vector<std::string>& action_names,
                           const ckf::Registry& registry) {
  std::string out;
  for (const Rule& r : rules.rules()) {
    out += action_names.at(static_cast<std::size_t>(r.action));
    out += ' ';
    out += registry.name_of(r.key_index);
    out += ' ' + std::to_string(r.phi) + ' ' + std::to_string(r.alpha) + '\n';
  }
  return out;
}

}  // namespace iota::affordance
