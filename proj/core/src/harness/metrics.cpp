#include "iota/harness/metrics.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include <fmt/format.h>

#include "iota/common/error.hpp"
#include "iota/harness/experiment_spec.hpp"

namespace iota::harness {

namespace fs = std::filesystem;

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto end = line.find(',', pos);
    out.push_back(line.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

template <typename T>
T field(std::string_view s, int line, std::string_view column) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(line, "bad value '" + std::string(s) + "' in column " + std::string(column));
  }
  return v;
}

struct Stats {
  double mean = 0;
  double std = 0;
};

Stats mean_std(const std::vector<double>& x) {
  Stats s;
  if (x.empty()) return s;
  for (double v : x) s.mean += v;
  s.mean /= static_cast<double>(x.size());
  if (x.size() > 1) {
    double ss = 0;
    for (double v : x) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(x.size() - 1));
  }
  return s;
}

}  // namespace

std::string format_row(const MetricsRow& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{}", r.run_id, r.agent, r.env, format_real(r.lambda), r.seed,
                     r.unit, r.unit_index, format_real(r.avg_reward), format_real(r.epsilon), r.steps_total,
                     r.wall_ms);
}

std::string format_metrics(const std::vector<MetricsRow>& rows) {
  std::string out(kMetricsHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += format_row(r);
    out += '\n';
  }
  return out;
}

std::vector<MetricsRow> parse_metrics(std::string_view text) {
  std::vector<MetricsRow> rows;
  const auto expected = split_csv(kMetricsHeader);
  int line_no = 0;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto cols = split_csv(line);
    if (header) {
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i >= cols.size()) throw ConfigError("metrics CSV is missing column '" + std::string(expected[i]) + "'");
        if (cols[i] != expected[i]) {
          throw ConfigError("metrics CSV column " + std::to_string(i + 1) + " is '" + std::string(cols[i]) +
                            "', expected '" + std::string(expected[i]) + "'");
        }
      }
      if (cols.size() > expected.size()) {
        throw ConfigError("metrics CSV has unexpected column '" + std::string(cols[expected.size()]) + "'");
      }
      header = false;
      continue;
    }
    if (cols.size() != expected.size()) {
      throw ParseError(line_no, "expected " + std::to_string(expected.size()) + " fields, got " +
                                    std::to_string(cols.size()));
    }
    MetricsRow r;
    r.run_id = cols[0];
    r.agent = cols[1];
    r.env = cols[2];
    r.lambda = field<double>(cols[3], line_no, expected[3]);
    r.seed = field<std::uint64_t>(cols[4], line_no, expected[4]);
    r.unit = cols[5];
    r.unit_index = field<int>(cols[6], line_no, expected[6]);
    r.avg_reward = field<double>(cols[7], line_no, expected[7]);
    r.epsilon = field<double>(cols[8], line_no, expected[8]);
    r.steps_total = field<long>(cols[9], line_no, expected[9]);
    r.wall_ms = field<long>(cols[10], line_no, expected[10]);
    rows.push_back(std::move(r));
  }
  if (header) throw ConfigError("metrics CSV is empty");
  return rows;
}

std::vector<MetricsRow> load_metrics(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open metrics CSV '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_metrics(buffer.str());
}

int tail_length(int units) { return units <= 0 ? 0 : std::max(1, (units + 3) / 4); }

std::vector<SummaryCell> summarize(const std::vector<MetricsRow>& rows) {
  using Key = std::tuple<std::string, std::string, double>;
  std::vector<Key> order;
  std::map<Key, std::vector<std::string>> runs_of;
  std::map<std::string, std::vector<double>> series;
  for (const auto& r : rows) {
    const Key key{r.env, r.agent, r.lambda};
    auto [it, fresh] = runs_of.try_emplace(key);
    if (fresh) order.push_back(key);
    auto& ids = it->second;
    if (std::find(ids.begin(), ids.end(), r.run_id) == ids.end()) ids.push_back(r.run_id);
    series[r.run_id].push_back(r.avg_reward);
  }
  std::vector<SummaryCell> cells;
  for (const auto& key : order) {
    SummaryCell c;
    std::tie(c.env, c.agent, c.lambda) = key;
    std::vector<double> full, tail;
    for (const auto& id : runs_of[key]) {
      const auto& x = series[id];
      const int n = static_cast<int>(x.size());
      const int t = tail_length(n);
      double sum = 0, tail_sum = 0;
      for (int i = 0; i < n; ++i) {
        sum += x[static_cast<std::size_t>(i)];
        if (i >= n - t) tail_sum += x[static_cast<std::size_t>(i)];
      }
      full.push_back(sum / n);
      tail.push_back(tail_sum / t);
      c.units = n;
      c.tail_units = t;
    }
    c.n_seeds = static_cast<int>(full.size());
    const auto f = mean_std(full);
    const auto t = mean_std(tail);
    c.full_mean = f.mean;
    c.full_std = f.std;
    c.tail_mean = t.mean;
    c.tail_std = t.std;
    cells.push_back(c);
  }
  return cells;
}

std::string format_summary_csv(const std::vector<SummaryCell>& cells) {
  std::string out(kSummaryHeader);
  out += '\n';
  for (const auto& c : cells) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", c.env, c.agent, format_real(c.lambda), c.n_seeds, c.units,
                       c.tail_units, format_real(c.full_mean), format_real(c.full_std), format_real(c.tail_mean),
                       format_real(c.tail_std));
  }
  return out;
}

std::string format_summary_table(const std::vector<SummaryCell>& cells) {
  std::vector<std::string> agents, columns;
  std::map<std::string, int> lambdas_per_agent;
  auto add_unique = [](std::vector<std::string>& v, const std::string& s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
  };
  std::vector<std::string> envs;
  std::vector<double> lambdas;
  for (const auto& c : cells) {
    add_unique(agents, c.agent);
    add_unique(envs, c.env);
    if (std::find(lambdas.begin(), lambdas.end(), c.lambda) == lambdas.end()) lambdas.push_back(c.lambda);
  }
  const bool by_lambda = envs.size() == 1 && lambdas.size() > 1 && [&] {
    for (const auto& a : agents) {
      int n = 0;
      for (const auto& c : cells) n += c.agent == a;
      if (n > 1) return true;
    }
    return false;
  }();
  if (by_lambda) {
    for (double l : lambdas) columns.push_back("lambda=" + format_real(l));
  } else {
    columns = envs;
  }
  auto entry = [&](const std::string& agent, std::size_t col) -> std::string {
    for (const auto& c : cells) {
      const bool match = by_lambda ? c.lambda == lambdas[col] : c.env == envs[col];
      if (c.agent == agent && match) return fmt::format("{:.2f} ± {:.2f}", c.tail_mean, c.tail_std);
    }
    return "-";
  };

  std::vector<std::vector<std::string>> table;
  table.push_back({"Agent"});
  for (const auto& c : columns) table.back().push_back(c);
  for (const auto& a : agents) {
    table.push_back({a});
    for (std::size_t i = 0; i < columns.size(); ++i) table.back().push_back(entry(a, i));
  }
  // Column widths in code points so "±" does not skew the layout.
  auto width = [](const std::string& s) {
    std::size_t n = 0;
    for (unsigned char ch : s) n += (ch & 0xC0) != 0x80;
    return n;
  };
  std::vector<std::size_t> widths(table.front().size(), 0);
  for (const auto& row : table) {
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], width(row[i]));
  }
  std::string out = by_lambda ? "Affordance loss impact (tail-mean reward, " + envs.front() + ")\n"
                              : std::string("Average reward (tail mean ± std over seeds)\n");
  for (std::size_t r = 0; r < table.size(); ++r) {
    for (std::size_t i = 0; i < table[r].size(); ++i) {
      out += (i == 0 ? "" : " | ") + table[r][i] + std::string(widths[i] - width(table[r][i]), ' ');
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
    if (r == 0) {
      for (std::size_t i = 0; i < widths.size(); ++i) out += (i == 0 ? "" : "-+-") + std::string(widths[i], '-');
      out += '\n';
    }
  }
  return out;
}

void write_atomic(const std::string& path, std::string_view content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("failed writing '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

}  // namespace iota::harness
