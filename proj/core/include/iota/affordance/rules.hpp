#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "iota/ckf/registry.hpp"

namespace iota::affordance {

// Negative affordance: `action` is forbidden when an element with key
// `key_index` lies within the scan ranges around the main element. phi is
// the signed horizontal range (cells, positive = increasing column), alpha
// the signed vertical range (positive = increasing row). Key 0 is the empty
// cell.
struct Rule {
  int action = 0;
  int key_index = 0;
  int phi = 0;
  int alpha = 0;

  double key(int mu) const { return static_cast<double>(key_index) / mu; }
  bool zero_range() const { return phi == 0 && alpha == 0; }

  friend bool operator==(const Rule&, const Rule&) = default;
};

class RuleSet {
 public:
  RuleSet() = default;
  RuleSet(int n_actions, std::vector<Rule> rules);

  int n_actions() const { return n_actions_; }
  const std::vector<Rule>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }

  // Rules of one action, in file order. Every action in [0, n_actions) has a
  // (possibly empty) list.
  const std::vector<Rule>& for_action(int action) const;

  // Returns false (and leaves the set unchanged) for an exact duplicate.
  bool add(const Rule& rule);

 private:
  int n_actions_ = 0;
  std::vector<Rule> rules_;
  std::vector<std::vector<Rule>> by_action_;
};

struct ParsedRules {
  RuleSet rules;
  std::vector<std::string> warnings;
};

// Parses the rule-file format: one `action element phi alpha` rule per line,
// `#` starts a comment. Names resolve against the environment's action list
// and element registry ("empty" is key 0). Syntax errors throw ParseError
// with the line number; unknown names throw ConfigError listing every
// offender. Exact duplicates are dropped with a warning.
ParsedRules parse_ruleset(std::string_view text, const std::vector<std::string>& action_names,
                          const ckf::Registry& registry);

ParsedRules load_ruleset(const std::string& path, const std::vector<std::string>& action_names,
                         const ckf::Registry& registry);

// Canonical text form, one rule per line.
std::string format_ruleset(const RuleSet& rules, const std::vector<std::string>& action_names,
                           const ckf::Registry& registry);

}  // namespace iota::affordance
