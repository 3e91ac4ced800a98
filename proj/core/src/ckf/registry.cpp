#include "iota/ckf/registry.hpp"

#include <algorithm>

#include "iota/ckf/token.hpp"
#include "iota/common/error.hpp"

namespace iota::ckf {

Registry::Registry(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw DomainError("registry needs at least the main element");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty() || names_[i] == kEmptyName) {
      throw DomainError("invalid element name '" + names_[i] + "'");
    }
    if (std::find(names_.begin(), names_.begin() + static_cast<std::ptrdiff_t>(i), names_[i]) !=
        names_.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw DomainError("duplicate element name '" + names_[i] + "'");
    }
  }
  compute_mu(size());
}

int Registry::mu() const { return compute_mu(size()); }

std::optional<int> Registry::find(std::string_view name) const {
  if (name == kEmptyName) return kEmptyKey;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i) + 1;
  }
  return std::nullopt;
}

int Registry::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw DomainError("unknown element '" + std::string(name) + "'");
}

const std::string& Registry::name_of(int index) const {
  static const std::string empty{kEmptyName};
  if (index == kEmptyKey) return empty;
  if (index < 1 || index > size()) throw DomainError("element index out of range");
  return names_[static_cast<std::size_t>(index - 1)];
}

}  // namespace iota::ckf
