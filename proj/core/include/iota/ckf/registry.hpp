#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace iota::ckf {

// Name <-> key-index table of one environment. Names are assigned indices
// 1, 2, ... in declaration order; the first name is the main element. The
// reserved name "empty" resolves to key 0.
class Registry {
 public:
  static constexpr std::string_view kEmptyName = "empty";
  static constexpr int kEmptyKey = 0;

  Registry() = default;
  explicit Registry(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  int mu() const;

  std::optional<int> find(std::string_view name) const;
  int index_of(std::string_view name) const;  // throws DomainError when unknown
  const std::string& name_of(int index) const;
  const std::vector<std::string>& names() const { return names_; }

  friend bool operator==(const Registry&, const Registry&) = default;

 private:
  std::vector<std::string> names_;
};

}  // namespace iota::ckf
