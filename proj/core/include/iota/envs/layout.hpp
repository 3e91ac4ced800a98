#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "iota/ckf/ckf.hpp"

namespace iota::envs {

enum class YAxis { up, down };

// A pinned level: `key: value` header lines followed by `grid:` and one text
// line per row of cells (top of the screen first). Lines starting with `#`
// in the header are comments.
//
//   name: taxidriver
//   screen: 112x112
//   cell: 16
//   y_axis: up
//   registry: taxi, wall, passenger, destination
//   legend: T=taxi #=wall P=passenger D=destination .=empty
//   grid:
//   #######
//   ...
struct Layout {
  std::string name;
  double cell = 16;
  YAxis y_axis = YAxis::up;
  std::vector<std::string> registry;
  std::map<char, std::string> legend;
  std::vector<std::string> lines;  // grid text, top line first
  std::vector<std::pair<std::string, std::string>> header;

  int rows() const { return static_cast<int>(lines.size()); }
  int cols() const { return lines.empty() ? 0 : static_cast<int>(lines.front().size()); }
  double screen_w() const { return cols() * cell; }
  double screen_h() const { return rows() * cell; }

  // Grid row index as the tokenizer sees it: row 0 is the bottom line when
  // the y axis points up and the top line when it points down.
  char at(int row, int col) const;
  // Element name under the legend for a cell ("empty" for unmapped chars).
  const std::string& name_at(int row, int col) const;
  // Cells whose legend name is `element`, in row-major grid order.
  std::vector<ckf::CellIndex> cells_of(std::string_view element) const;

  std::optional<std::string> get(std::string_view key) const;
  std::string require(std::string_view key) const;  // throws ConfigError
  int get_int(std::string_view key, int fallback) const;
  std::vector<int> get_ints(std::string_view key) const;
};

Layout parse_layout(std::string_view text);
Layout load_layout(const std::string& path);

// Directory holding layouts/ and rules/. IOTA_RL_ASSETS overrides the
// compiled-in default.
std::string default_asset_dir();
std::string layout_path(std::string_view env_name, const std::string& asset_dir = default_asset_dir());
std::string rules_path(std::string_view env_name, const std::string& asset_dir = default_asset_dir());

}  // namespace iota::envs
