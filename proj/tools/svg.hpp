#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace catlab::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Standalone SVG line chart: one polyline per series, axis ticks, legend.
std::string line_plot(const std::vector<Series>& series, std::string_view title,
                      std::string_view x_label, std::string_view y_label);

}  // namespace catlab::cli
