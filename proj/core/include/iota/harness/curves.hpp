#pragma once

#include <string>
#include <vector>

#include "iota/harness/metrics.hpp"

namespace iota::harness {

// Trailing moving average: out[i] = mean(x[max(0, i - window + 1) .. i]).
std::vector<double> moving_average(const std::vector<double>& x, int window);

struct Curve {
  std::string env;
  std::string agent;
  double lambda = 0;
  std::string unit;
  std::vector<int> unit_index;
  std::vector<double> value;  // seed mean, then smoothed
};

std::vector<Curve> build_curves(const std::vector<MetricsRow>& rows, int window);

std::string format_curves_csv(const std::vector<Curve>& curves);
// Line chart of every curve of one environment.
std::string render_svg(const std::vector<Curve>& curves, const std::string& env);

// Reads a metrics CSV and writes curves.csv plus <env>.svg per environment
// into `out_dir`. Returns the files written.
std::vector<std::string> export_curves(const std::string& csv_path, int window, const std::string& out_dir);

}  // namespace iota::harness
