// Minimal SVG renderings for eyeballing figure output.

#pragma once

#include <string>
#include <vector>

namespace qcorr::app {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

std::string line_plot_svg(const std::string& title, const std::string& x_label, const std::vector<Series>& series);

// values[iy * xs.size() + ix]
std::string heatmap_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                        const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::vector<double>& values);

}  // namespace qcorr::app
