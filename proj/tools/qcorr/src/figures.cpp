#include "qcorr_app/figures.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#include "qcorr/error.hpp"
#include "qcorr/parallel.hpp"
#include "qcorr/robustness.hpp"
#include "qcorr_app/svg.hpp"

namespace qcorr::app {

namespace {

const std::vector<std::string> kMeasureColumns{"concurrence", "eof", "mid", "qd", "gmqd"};

std::vector<Cell> measure_cells(const CorrelationReport& r) { return {r.concurrence, r.eof, r.mid, r.qd, r.gmqd}; }

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return v;
}

// (0, r_max]: the collective rates are singular at r = 0.
std::vector<double> r_grid(const FigureConfig& c) {
  std::vector<double> v(static_cast<std::size_t>(c.r_points));
  for (int i = 0; i < c.r_points; ++i) v[static_cast<std::size_t>(i)] = c.r_max * (i + 1) / c.r_points;
  return v;
}

Trajectory trajectory(double alpha2, const FigureConfig& c, double r, std::span<const double> times) {
  const AtomPairParams params(r, c.omega);
  const double alpha = std::sqrt(alpha2);
  if (c.p == 1.0) return propagate_analytic(alpha, params, times);
  return integrate(werner_like(alpha, c.p), params, times);
}

DensityMatrix state_at_fixed_time(double alpha2, const FigureConfig& c, double r) {
  std::vector<double> times{0.0};
  if (c.t_fixed > 0.0) times.push_back(c.t_fixed);
  return trajectory(alpha2, c, r, times).states.back();
}

Table make_table(const FigureConfig& c, std::string name, std::vector<std::string> columns) {
  Table t;
  t.name = std::move(name);
  t.comment = c.describe();
  t.columns = std::move(columns);
  return t;
}

// Fills n rows in parallel. Rows after the first failing one are dropped.
void fill_rows(Table& t, std::size_t n, unsigned jobs, const std::function<std::vector<Cell>(std::size_t)>& row) {
  std::vector<std::vector<Cell>> rows(n);
  std::vector<std::optional<std::string>> errors(n);
  parallel_for(n, jobs, [&](std::size_t i) {
    try {
      rows[i] = row(i);
    } catch (const IntegrationError& e) {
      errors[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) {
      t.failure = *errors[i];
      return;
    }
    t.rows.push_back(std::move(rows[i]));
  }
}

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

// A whole trajectory is integrated up front; a failure leaves an empty
// table with the failure footer.
template <class RowFn>
Table time_table(const FigureConfig& c, std::string name, std::vector<std::string> columns, RowFn row) {
  Table t = make_table(c, std::move(name), std::move(columns));
  const auto times = uniform_grid(c.t_max, c.t_points);
  Trajectory tr;
  try {
    tr = trajectory(c.alpha2, c, c.r_over_lambda, times);
  } catch (const IntegrationError& e) {
    t.failure = e.what();
    return t;
  }
  const ReportOptions opts;
  fill_rows(t, times.size(), c.jobs, [&](std::size_t i) { return row(times[i], correlations(tr.states[i], opts)); });
  return t;
}

std::vector<Table> fig1(const FigureConfig& c) {
  Table t = make_table(c, "fig1", with({"gamma_t", "alpha2"}, kMeasureColumns));
  const auto times = uniform_grid(c.t_max, c.t_points);
  const auto alphas = linspace(0.0, 1.0, c.alpha_points);
  const std::size_t nt = times.size();
  // One trajectory per alpha2; rows ordered alpha2-major.
  std::vector<std::vector<std::vector<Cell>>> blocks(alphas.size());
  std::vector<std::optional<std::string>> errors(alphas.size());
  parallel_for(alphas.size(), c.jobs, [&](std::size_t a) {
    try {
      const Trajectory tr = trajectory(alphas[a], c, c.r_over_lambda, times);
      for (std::size_t i = 0; i < nt; ++i) {
        std::vector<Cell> cells{times[i], alphas[a]};
        for (auto& cell : measure_cells(correlations(tr.states[i]))) cells.push_back(cell);
        blocks[a].push_back(std::move(cells));
      }
    } catch (const IntegrationError& e) {
      errors[a] = e.what();
    }
  });
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    if (errors[a]) {
      t.failure = *errors[a];
      break;
    }
    for (auto& row : blocks[a]) t.rows.push_back(std::move(row));
  }
  return {t};
}

std::vector<Table> fig2(const FigureConfig& c) {
  Table by_time = time_table(c, "fig2_time", with({"gamma_t"}, kMeasureColumns), [](double t, const auto& r) {
    std::vector<Cell> row{t};
    for (auto& cell : measure_cells(r)) row.push_back(cell);
    return row;
  });
  Table by_alpha = make_table(c, "fig2_alpha", with({"alpha2"}, kMeasureColumns));
  const auto alphas = linspace(0.0, 1.0, c.alpha_points);
  fill_rows(by_alpha, alphas.size(), c.jobs, [&](std::size_t i) {
    std::vector<Cell> row{alphas[i]};
    for (auto& cell : measure_cells(correlations(state_at_fixed_time(alphas[i], c, c.r_over_lambda))))
      row.push_back(cell);
    return row;
  });
  return {by_time, by_alpha};
}

std::vector<Cell> qd_cells(const CorrelationReport& r) {
  return {r.qd, std::string(to_string(r.qd_theta_branch)), std::string(to_string(r.qd_phi_branch)), r.qd_basis.phi};
}

std::vector<Cell> gmqd_cells(const CorrelationReport& r, const DensityMatrix& rho) {
  const auto g = gmqd(rho);
  return {r.gmqd, g.k[0], g.k[1], g.k[2], std::string(to_string(r.gmqd_branch))};
}

template <class CellsFn>
std::vector<Table> branch_figure(const FigureConfig& c, const std::string& stem, std::vector<std::string> cols,
                                 CellsFn cells) {
  Table by_time = make_table(c, stem + "_time", with({"gamma_t"}, cols));
  const auto times = uniform_grid(c.t_max, c.t_points);
  try {
    const Trajectory tr = trajectory(c.alpha2, c, c.r_over_lambda, times);
    fill_rows(by_time, times.size(), c.jobs, [&](std::size_t i) {
      std::vector<Cell> row{times[i]};
      for (auto& cell : cells(tr.states[i])) row.push_back(cell);
      return row;
    });
  } catch (const IntegrationError& e) {
    by_time.failure = e.what();
  }
  Table by_r = make_table(c, stem + "_r", with({"r_over_lambda"}, cols));
  const auto rs = r_grid(c);
  fill_rows(by_r, rs.size(), c.jobs, [&](std::size_t i) {
    std::vector<Cell> row{rs[i]};
    for (auto& cell : cells(state_at_fixed_time(c.alpha2, c, rs[i]))) row.push_back(cell);
    return row;
  });
  return {by_time, by_r};
}

std::vector<Table> fig5(const FigureConfig& c) {
  Table t = make_table(c, "fig5", with({"r_over_lambda"}, kMeasureColumns));
  const auto rs = r_grid(c);
  fill_rows(t, rs.size(), c.jobs, [&](std::size_t i) {
    std::vector<Cell> row{rs[i]};
    for (auto& cell : measure_cells(correlations(state_at_fixed_time(c.alpha2, c, rs[i])))) row.push_back(cell);
    return row;
  });
  return {t};
}

std::vector<Table> fig6(const FigureConfig& c, std::ostream& log) {
  Table env_table = make_table(c, "fig6_envelope", {"gamma_t", "measure", "min", "max", "baseline"});
  Table esd_table = make_table(c, "fig6_esd", {"index", "alpha", "beta", "gamma", "esd_gamma_t", "status"});
  const auto times = uniform_grid(c.t_max, c.t_points);
  const auto lattice = unitary_lattice(c.vgrid[0], c.vgrid[1], c.vgrid[2]);
  EnvelopeOptions opts;
  opts.jobs = c.jobs;
  Envelope env;
  try {
    env = envelope(werner_like(std::sqrt(c.alpha2), c.p), AtomPairParams(c.r_over_lambda, c.omega), lattice, times,
                   opts);
  } catch (const IntegrationError& e) {
    env_table.failure = e.what();
    esd_table.failure = e.what();
    return {env_table, esd_table};
  }
  for (std::size_t t = 0; t < times.size(); ++t)
    for (Measure m : kAllMeasures) {
      const auto k = static_cast<std::size_t>(m);
      env_table.rows.push_back(
          {times[t], std::string(to_string(m)), env.min[k][t], env.max[k][t], env.baseline[k][t]});
    }
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    Cell esd = std::string("none");
    if (env.esd_times[i]) esd = *env.esd_times[i];
    if (!env.completed[i]) {
      esd = std::string("");
      log << "fig6: skipped V #" << i << ": " << env.skip_reasons[i] << '\n';
    }
    esd_table.rows.push_back({static_cast<double>(i), lattice[i].alpha, lattice[i].beta, lattice[i].gamma, esd,
                              std::string(env.completed[i] ? "ok" : "skipped")});
  }
  std::ostringstream extra;
  extra << " baseline_esd=" << (env.baseline_esd ? format_number(*env.baseline_esd) : std::string("none"))
        << " no_esd_count=" << env.no_esd.size();
  esd_table.comment += extra.str();
  return {env_table, esd_table};
}

void ensure(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

Series series_of(const Table& t, const std::string& x, const std::string& y) {
  return {y, t.column(t.column_index(x)), t.column(t.column_index(y))};
}

std::vector<Series> measure_series(const Table& t, const std::string& x) {
  std::vector<Series> out;
  for (const auto& m : kMeasureColumns) out.push_back(series_of(t, x, m));
  return out;
}

}  // namespace

void FigureConfig::validate() const {
  ensure(figure >= 1 && figure <= 6, "figure id must be 1..6");
  ensure(alpha2 >= 0.0 && alpha2 <= 1.0, "alpha2 must lie in [0, 1]");
  ensure(p >= 0.0 && p <= 1.0, "p must lie in [0, 1]");
  ensure(r_over_lambda > 0.0 && std::isfinite(r_over_lambda), "r must be > 0");
  ensure(std::isfinite(omega), "omega must be finite");
  ensure(t_max > 0.0 && std::isfinite(t_max), "tmax must be > 0");
  ensure(t_points >= 2 && alpha_points >= 2 && r_points >= 2, "resolutions must be >= 2");
  ensure(r_max > 0.0 && std::isfinite(r_max), "rmax must be > 0");
  ensure(t_fixed >= 0.0 && std::isfinite(t_fixed), "fixed gamma t must be >= 0");
  ensure(vgrid[0] >= 1 && vgrid[1] >= 1 && vgrid[2] >= 1, "vgrid dimensions must be >= 1");
}

std::string FigureConfig::describe() const {
  std::ostringstream s;
  s << "qcorr fig " << figure << " alpha2=" << format_number(alpha2) << " p=" << format_number(p)
    << " r=" << format_number(r_over_lambda) << " omega=" << format_number(omega) << " tmax=" << format_number(t_max)
    << " tpoints=" << t_points << " apoints=" << alpha_points << " rpoints=" << r_points
    << " rmax=" << format_number(r_max) << " tfixed=" << format_number(t_fixed) << " vgrid=" << vgrid[0] << 'x'
    << vgrid[1] << 'x' << vgrid[2];
  return s.str();
}

FigureConfig default_figure_config(int figure) {
  FigureConfig c;
  c.figure = figure;
  switch (figure) {
    case 1:
      c.t_max = 1.2;
      c.t_points = 121;
      break;
    case 5:
      c.alpha2 = 0.8;
      break;
    case 6:
      c.alpha2 = 0.5;
      c.p = 0.65;
      break;
    default:
      break;
  }
  return c;
}

std::vector<Table> compute_figure(const FigureConfig& c, std::ostream& log) {
  c.validate();
  switch (c.figure) {
    case 1:
      return fig1(c);
    case 2:
      return fig2(c);
    case 3:
      return branch_figure(c, "fig3", {"qd", "theta_branch", "phi_branch", "phi"},
                           [](const DensityMatrix& rho) { return qd_cells(correlations(rho)); });
    case 4:
      return branch_figure(c, "fig4", {"gmqd", "k1", "k2", "k3", "k_branch"}, [](const DensityMatrix& rho) {
        return gmqd_cells(correlations(rho), rho);
      });
    case 5:
      return fig5(c);
    case 6:
      return fig6(c, log);
    default:
      throw ValidationError("figure id must be 1..6");
  }
}

std::vector<PlotFile> figure_plots(const FigureConfig& c, const std::vector<Table>& tables) {
  std::vector<PlotFile> out;
  for (const auto& t : tables) {
    if (t.rows.empty()) continue;
    if (t.name == "fig1") {
      const auto times = uniform_grid(c.t_max, c.t_points);
      const auto alphas = linspace(0.0, 1.0, c.alpha_points);
      for (const auto& m : kMeasureColumns) {
        auto v = t.column(t.column_index(m));
        v.resize(times.size() * alphas.size(), NAN);
        out.push_back({"fig1_" + m, heatmap_svg("fig1 " + m, "gamma t", "alpha2", times, alphas, v)});
      }
    } else if (t.name == "fig2_time" || t.name == "fig3_time" || t.name == "fig4_time") {
      const std::string y = t.name == "fig3_time" ? "qd" : t.name == "fig4_time" ? "gmqd" : "";
      auto series = y.empty() ? measure_series(t, "gamma_t") : std::vector<Series>{series_of(t, "gamma_t", y)};
      out.push_back({t.name, line_plot_svg(t.name, "gamma t", series)});
    } else if (t.name == "fig2_alpha") {
      out.push_back({t.name, line_plot_svg(t.name, "alpha2", measure_series(t, "alpha2"))});
    } else if (t.name == "fig3_r" || t.name == "fig4_r") {
      const std::string y = t.name == "fig3_r" ? "qd" : "gmqd";
      out.push_back({t.name, line_plot_svg(t.name, "r/lambda", {series_of(t, "r_over_lambda", y)})});
    } else if (t.name == "fig5") {
      out.push_back({t.name, line_plot_svg(t.name, "r/lambda", measure_series(t, "r_over_lambda"))});
    } else if (t.name == "fig6_envelope") {
      const auto nm = kMeasureColumns.size();
      for (std::size_t k = 0; k < nm; ++k) {
        Series lo{"min", {}, {}}, hi{"max", {}, {}}, base{"baseline", {}, {}};
        for (std::size_t i = k; i < t.rows.size(); i += nm) {
          const double time = std::get<double>(t.rows[i][0]);
          lo.x.push_back(time), lo.y.push_back(std::get<double>(t.rows[i][2]));
          hi.x.push_back(time), hi.y.push_back(std::get<double>(t.rows[i][3]));
          base.x.push_back(time), base.y.push_back(std::get<double>(t.rows[i][4]));
        }
        out.push_back({"fig6_" + kMeasureColumns[k],
                       line_plot_svg("fig6 " + kMeasureColumns[k] + " envelope", "gamma t", {lo, hi, base})});
      }
    }
  }
  return out;
}

}  // namespace qcorr::app
