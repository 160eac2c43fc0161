// Figure data sets: resolved run configuration and the tables behind each
// figure.

#pragma once

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "qcorr_app/table.hpp"

namespace qcorr::app {

struct FigureConfig {
  int figure = 1;
  double alpha2 = 0.9;         // initial |e1 e2> weight
  double p = 1.0;              // Werner-like purity; 1 is the pure Bell-like state
  double r_over_lambda = 0.6737;
  double omega = 0.0;          // transition frequency / gamma
  double t_max = 6.0;          // gamma t range [0, t_max]
  int t_points = 601;
  int alpha_points = 101;      // alpha2 sweeps over [0, 1]
  int r_points = 300;          // r sweeps over (0, r_max]
  double r_max = 3.0;
  double t_fixed = 0.35;       // gamma t of the alpha2 and r sweeps
  std::array<int, 3> vgrid{9, 12, 12};
  unsigned jobs = 0;

  // Throws ValidationError.
  void validate() const;
  // Every field that affects the output; jobs is deliberately absent.
  std::string describe() const;
};

FigureConfig default_figure_config(int figure);

// Computation stops at the first integration failure; the affected table
// then carries the rows computed so far and a failure message.
std::vector<Table> compute_figure(const FigureConfig& config, std::ostream& log);

struct PlotFile {
  std::string name;
  std::string svg;
};
std::vector<PlotFile> figure_plots(const FigureConfig& config, const std::vector<Table>& tables);

}  // namespace qcorr::app
