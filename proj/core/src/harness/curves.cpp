#include "iota/harness/curves.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <tuple>

#include <fmt/format.h>

#include "iota/common/error.hpp"
#include "iota/harness/experiment_spec.hpp"

namespace iota::harness {

namespace fs = std::filesystem;

std::vector<double> moving_average(const std::vector<double>& x, int window) {
  if (window < 1) throw DomainError("smoothing window must be at least 1");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::size_t lo = i + 1 >= static_cast<std::size_t>(window) ? i + 1 - static_cast<std::size_t>(window) : 0;
    double sum = 0;
    for (std::size_t j = lo; j <= i; ++j) sum += x[j];
    out[i] = sum / static_cast<double>(i - lo + 1);
  }
  return out;
}

std::vector<Curve> build_curves(const std::vector<MetricsRow>& rows, int window) {
  using Key = std::tuple<std::string, std::string, double>;
  std::vector<Key> order;
  std::map<Key, std::string> unit_of;
  // unit_index -> (sum, count)
  std::map<Key, std::map<int, std::pair<double, int>>> acc;
  for (const auto& r : rows) {
    const Key key{r.env, r.agent, r.lambda};
    if (acc.find(key) == acc.end()) order.push_back(key);
    auto& slot = acc[key][r.unit_index];
    slot.first += r.avg_reward;
    slot.second += 1;
    unit_of[key] = r.unit;
  }
  std::vector<Curve> curves;
  for (const auto& key : order) {
    Curve c;
    std::tie(c.env, c.agent, c.lambda) = key;
    c.unit = unit_of[key];
    std::vector<double> mean;
    for (const auto& [index, sc] : acc[key]) {
      c.unit_index.push_back(index);
      mean.push_back(sc.first / sc.second);
    }
    c.value = moving_average(mean, window);
    curves.push_back(std::move(c));
  }
  return curves;
}

std::string format_curves_csv(const std::vector<Curve>& curves) {
  std::string out = "env,agent,lambda,unit,unit_index,value\n";
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.value.size(); ++i) {
      out += fmt::format("{},{},{},{},{},{}\n", c.env, c.agent, format_real(c.lambda), c.unit, c.unit_index[i],
                         format_real(c.value[i]));
    }
  }
  return out;
}

std::string render_svg(const std::vector<Curve>& curves, const std::string& env) {
  constexpr double kW = 720, kH = 400, kLeft = 60, kRight = 170, kTop = 30, kBottom = 40;
  static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  std::vector<const Curve*> mine;
  double x_min = INFINITY, x_max = -INFINITY, y_min = INFINITY, y_max = -INFINITY;
  bool several_lambdas = false;
  for (const auto& c : curves) {
    if (c.env != env || c.value.empty()) continue;
    for (const auto* m : mine) several_lambdas = several_lambdas || (m->agent == c.agent && m->lambda != c.lambda);
    mine.push_back(&c);
    x_min = std::min<double>(x_min, c.unit_index.front());
    x_max = std::max<double>(x_max, c.unit_index.back());
    for (double v : c.value) {
      y_min = std::min(y_min, v);
      y_max = std::max(y_max, v);
    }
  }
  if (mine.empty()) {
    x_min = 0;
    x_max = 1;
    y_min = 0;
    y_max = 1;
  }
  if (x_max == x_min) x_max = x_min + 1;
  if (y_max == y_min) {
    y_min -= 1;
    y_max += 1;
  }
  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - (y - y_min) / (y_max - y_min)) * ph; };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"sans-serif\" "
      "font-size=\"11\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      kW, kH);
  out += fmt::format("<text x=\"{}\" y=\"18\" font-size=\"14\">{}</text>\n", kLeft, env);
  out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#999\"/>\n", kLeft, kTop,
                     pw, ph);
  for (int i = 0; i <= 4; ++i) {
    const double y = y_min + (y_max - y_min) * i / 4.0;
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.2f}</text>\n", kLeft - 4, py(y) + 4, y);
    const double x = x_min + (x_max - x_min) * i / 4.0;
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.0f}</text>\n", px(x), kH - kBottom + 16,
                       x);
  }
  if (y_min < 0 && y_max > 0) {
    out += fmt::format("<line x1=\"{}\" x2=\"{}\" y1=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"#ccc\"/>\n", kLeft, kLeft + pw,
                       py(0), py(0));
  }
  for (std::size_t k = 0; k < mine.size(); ++k) {
    const auto& c = *mine[k];
    const char* color = kColors[k % std::size(kColors)];
    std::string points;
    for (std::size_t i = 0; i < c.value.size(); ++i) {
      points += fmt::format("{}{:.1f},{:.1f}", i == 0 ? "" : " ", px(c.unit_index[i]), py(c.value[i]));
    }
    out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", color, points);
    const std::string label = several_lambdas ? c.agent + " λ=" + format_real(c.lambda) : c.agent;
    const double ly = kTop + 14.0 * static_cast<double>(k) + 8;
    out += fmt::format("<line x1=\"{}\" x2=\"{}\" y1=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"{}\" stroke-width=\"2\"/>\n",
                       kW - kRight + 10, kW - kRight + 30, ly, ly, color);
    out += fmt::format("<text x=\"{}\" y=\"{:.1f}\">{}</text>\n", kW - kRight + 35, ly + 4, label);
  }
  const std::string unit = mine.empty() ? "unit" : mine.front()->unit;
  out += fmt::format("<text x=\"{:.1f}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", kLeft + pw / 2, kH - 6, unit);
  out += "</svg>\n";
  return out;
}

std::vector<std::string> export_curves(const std::string& csv_path, int window, const std::string& out_dir) {
  if (window < 1) throw ConfigError("--window must be at least 1");
  const auto rows = load_metrics(csv_path);
  const auto curves = build_curves(rows, window);
  std::vector<std::string> written;
  const auto csv = (fs::path(out_dir) / "curves.csv").string();
  write_atomic(csv, format_curves_csv(curves));
  written.push_back(csv);
  std::vector<std::string> envs;
  for (const auto& c : curves) {
    if (std::find(envs.begin(), envs.end(), c.env) == envs.end()) envs.push_back(c.env);
  }
  for (const auto& env : envs) {
    const auto svg = (fs::path(out_dir) / (env + ".svg")).string();
    write_atomic(svg, render_svg(curves, env));
    written.push_back(svg);
  }
  return written;
}

}  // namespace iota::harness
