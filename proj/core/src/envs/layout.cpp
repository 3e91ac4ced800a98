#include "iota/envs/layout.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "iota/common/error.hpp"

#ifndef IOTA_RL_DEFAULT_ASSET_DIR
#define IOTA_RL_DEFAULT_ASSET_DIR "assets"
#endif

namespace iota::envs {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_list(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t end = std::min(s.find(sep, pos), s.size());
    const auto item = trim(s.substr(pos, end - pos));
    if (!item.empty()) out.emplace_back(item);
    pos = end + 1;
  }
  return out;
}

int parse_int(std::string_view s, int line) {
  s = trim(s);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(line, "expected integer, got '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

char Layout::at(int row, int col) const {
  if (row < 0 || row >= rows() || col < 0 || col >= cols()) throw DomainError("layout cell out of range");
  const int line = y_axis == YAxis::up ? rows() - 1 - row : row;
  return lines[static_cast<std::size_t>(line)][static_cast<std::size_t>(col)];
}

const std::string& Layout::name_at(int row, int col) const {
  static const std::string empty = "empty";
  const auto it = legend.find(at(row, col));
  return it == legend.end() ? empty : it->second;
}

std::vector<ckf::CellIndex> Layout::cells_of(std::string_view element) const {
  std::vector<ckf::CellIndex> out;
  for (int r = 0; r < rows(); ++r) {
    for (int c = 0; c < cols(); ++c) {
      if (name_at(r, c) == element) out.push_back({r, c});
    }
  }
  return out;
}

std::optional<std::string> Layout::get(std::string_view key) const {
  for (const auto& [k, v] : header) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string Layout::require(std::string_view key) const {
  if (auto v = get(key)) return *v;
  throw ConfigError("layout '" + name + "' is missing header key '" + std::string(key) + "'");
}

int Layout::get_int(std::string_view key, int fallback) const {
  const auto v = get(key);
  return v ? parse_int(*v, 0) : fallback;
}

std::vector<int> Layout::get_ints(std::string_view key) const {
  std::vector<int> out;
  for (const auto& item : split_list(require(key), ',')) out.push_back(parse_int(item, 0));
  return out;
}

Layout parse_layout(std::string_view text) {
  Layout layout;
  bool in_grid = false;
  int line_no = 0;
  std::optional<std::string> screen;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (in_grid) {
      if (trim(line).empty()) continue;
      layout.lines.emplace_back(line);
      continue;
    }
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto colon = t.find(':');
    if (colon == std::string_view::npos) throw ParseError(line_no, "expected 'key: value'");
    const std::string key(trim(t.substr(0, colon)));
    const std::string value(trim(t.substr(colon + 1)));
    if (key == "grid") {
      in_grid = true;
      continue;
    }
    layout.header.emplace_back(key, value);
    if (key == "name") {
      layout.name = value;
    } else if (key == "cell") {
      layout.cell = parse_int(value, line_no);
    } else if (key == "y_axis") {
      if (value == "up") layout.y_axis = YAxis::up;
      else if (value == "down") layout.y_axis = YAxis::down;
      else throw ParseError(line_no, "y_axis must be 'up' or 'down'");
    } else if (key == "registry") {
      layout.registry = split_list(value, ',');
    } else if (key == "legend") {
      for (const auto& entry : split_list(value, ' ')) {
        if (entry.size() < 3 || entry[1] != '=') throw ParseError(line_no, "legend entries look like 'c=name'");
        layout.legend[entry[0]] = entry.substr(2);
      }
    } else if (key == "screen") {
      screen = value;
    }
  }

  if (layout.name.empty()) throw ConfigError("layout has no name");
  if (layout.registry.empty()) throw ConfigError("layout '" + layout.name + "' has no registry");
  if (layout.lines.empty()) throw ConfigError("layout '" + layout.name + "' has no grid");
  if (layout.cell <= 0) throw ConfigError("layout cell size must be positive");
  const auto width = layout.lines.front().size();
  for (const auto& l : layout.lines) {
    if (l.size() != width) throw ConfigError("layout '" + layout.name + "' has ragged grid rows");
  }
  for (const auto& [c, element] : layout.legend) {
    if (element != "empty" &&
        std::find(layout.registry.begin(), layout.registry.end(), element) == layout.registry.end()) {
      throw ConfigError("legend maps '" + std::string(1, c) + "' to unregistered element '" + element + "'");
    }
  }
  if (screen) {
    const auto x = screen->find('x');
    if (x == std::string::npos) throw ConfigError("screen must look like WxH");
    const int w = parse_int(std::string_view(*screen).substr(0, x), 0);
    const int h = parse_int(std::string_view(*screen).substr(x + 1), 0);
    if (w != layout.screen_w() || h != layout.screen_h()) {
      throw ConfigError("layout '" + layout.name + "' declares screen " + *screen +
                        " but its grid is " + std::to_string(static_cast<int>(layout.screen_w())) + "x" +
                        std::to_string(static_cast<int>(layout.screen_h())));
    }
  }
  return layout;
}

Layout load_layout(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open layout '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_layout(buffer.str());
}

std::string default_asset_dir() {
  if (const char* env = std::getenv("IOTA_RL_ASSETS"); env != nullptr && *env != '\0') return env;
  return IOTA_RL_DEFAULT_ASSET_DIR;
}

std::string layout_path(std::string_view env_name, const std::string& asset_dir) {
  return asset_dir + "/layouts/" + std::string(env_name) + ".layout";
}

std::string rules_path(std::string_view env_name, const std::string& asset_dir) {
  return asset_dir + "/rules/" + std::string(env_name) + ".rules";
}

}  // namespace iota::envs
