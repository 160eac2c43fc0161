#include "qcorr_app/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>

#include "qcorr/error.hpp"
#include "qcorr/measures.hpp"
#include "qcorr_app/figures.hpp"
#include "qcorr_app/svg.hpp"
#include "qcorr_app/verify.hpp"

namespace qcorr::app {

namespace {

namespace fs = std::filesystem;

// Round-trip precision, so printed values parse back to the library's doubles.
std::string exact(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_measures(const std::string& path, bool csv, bool symmetric, std::ostream& out) {
  const DensityMatrix rho = read_state_file(path);
  ReportOptions opts;
  opts.symmetric_qd = symmetric;
  const CorrelationReport r = correlations(rho, opts);
  out << "concurrence=" << exact(r.concurrence) << '\n'
      << "eof=" << exact(r.eof) << '\n'
      << "mid=" << exact(r.mid) << '\n'
      << "qd=" << exact(r.qd) << '\n'
      << "gmqd=" << exact(r.gmqd) << '\n'
      << "x_state=" << (r.x_state ? "true" : "false") << '\n'
      << "concurrence_witness=" << exact(r.concurrence_witness) << '\n'
      << "concurrence_branch=" << to_string(r.concurrence_branch) << '\n'
      << "qd_theta=" << exact(r.qd_basis.theta) << '\n'
      << "qd_phi=" << exact(r.qd_basis.phi) << '\n'
      << "qd_theta_branch=" << to_string(r.qd_theta_branch) << '\n'
      << "qd_phi_branch=" << to_string(r.qd_phi_branch) << '\n'
      << "gmqd_branch=" << to_string(r.gmqd_branch) << '\n'
      << "gmqd_degenerate=" << (r.gmqd_degenerate ? "true" : "false") << '\n'
      << "mid_degenerate=" << (r.mid_degenerate ? "true" : "false") << '\n';
  if (csv) {
    out << "concurrence,eof,mid,qd,gmqd\n"
        << exact(r.concurrence) << ',' << exact(r.eof) << ',' << exact(r.mid) << ',' << exact(r.qd) << ','
        << exact(r.gmqd) << '\n';
  }
  return kOk;
}

std::array<int, 3> parse_vgrid(const std::string& s) {
  static const std::regex pattern(R"((\d+)[xX](\d+)[xX](\d+))");
  std::smatch m;
  if (!std::regex_match(s, m, pattern)) throw ValidationError("--vgrid expects AxBxC, got '" + s + "'");
  return {std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3])};
}

void check_writable(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ValidationError("cannot create output directory " + dir.string() + ": " + ec.message());
  const fs::path probe = dir / ".qcorr-write-check";
  {
    std::ofstream f(probe);
    if (!f) throw ValidationError("output directory " + dir.string() + " is not writable");
  }
  fs::remove(probe, ec);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw ValidationError("failed writing " + path.string());
}

int cmd_fig(const FigureConfig& config, const fs::path& out_dir, bool svg, std::ostream& out, std::ostream& err) {
  config.validate();
  check_writable(out_dir);
  const auto tables = compute_figure(config, err);
  int status = kOk;
  for (const auto& t : tables) {
    const fs::path path = out_dir / (t.name + ".csv");
    std::ofstream f(path, std::ios::binary);
    write_csv(f, t);
    if (!f) throw ValidationError("failed writing " + path.string());
    out << path.string() << " (" << t.rows.size() << " rows)\n";
    if (t.failure) {
      err << t.name << ": numeric failure: " << *t.failure << '\n';
      status = kNumericFailure;
    }
  }
  if (svg)
    for (const auto& plot : figure_plots(config, tables)) {
      const fs::path path = out_dir / (plot.name + ".svg");
      write_text(path, plot.svg);
      out << path.string() << '\n';
    }
  return status;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::optional<double> tol, std::ostream& out) {
  std::vector<std::string> names;
  if (suite == "all")
    names = suite_names();
  else
    names = {suite};
  bool all_passed = true;
  for (const auto& name : names) {
    const SuiteResult r = run_suite(name, seed, tol);
    for (const auto& c : r.checks) {
      char line[200];
      std::snprintf(line, sizeof line, "%-24s %-22s max_error=%.3e tol=%.1e %s\n", r.name.c_str(), c.label.c_str(),
                    c.max_error, c.tolerance, c.passed() ? "PASS" : "FAIL");
      out << line;
    }
    all_passed = all_passed && r.passed();
  }
  out << (all_passed ? "verify: all suites passed\n" : "verify: FAILED\n");
  return all_passed ? kOk : kVerifyFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"qcorr: quantum correlations of two atoms under collective spontaneous emission"};
  app.require_subcommand(1);

  auto* measures = app.add_subcommand("measures", "all five measures of a state file");
  std::string state_path;
  bool csv = false;
  bool symmetric = false;
  measures->add_option("file", state_path, "state file: 16 lines 'row col re im', 1-based")->required();
  measures->add_flag("--csv", csv, "also print a CSV row");
  measures->add_flag("--symmetric-qd", symmetric, "minimise QD over measurements on either qubit");

  auto* fig = app.add_subcommand("fig", "figure data as CSV (and SVG)");
  int figure_id = 0;
  std::optional<double> alpha2, p, r, omega, tmax, rmax, tfixed;
  std::optional<int> tpoints, apoints, rpoints;
  std::optional<std::string> vgrid;
  std::string out_path = ".";
  bool svg = false;
  unsigned jobs = 0;
  fig->add_option("figure", figure_id, "figure id")->required()->check(CLI::Range(1, 6));
  fig->add_option("--alpha2", alpha2, "initial |e1 e2> weight");
  fig->add_option("--p", p, "Werner-like mixing parameter");
  fig->add_option("--r", r, "interatomic distance r/lambda");
  fig->add_option("--omega", omega, "transition frequency in units of gamma");
  fig->add_option("--tmax", tmax, "largest gamma t");
  fig->add_option("--tpoints", tpoints, "time samples");
  fig->add_option("--apoints", apoints, "alpha2 samples over [0, 1]");
  fig->add_option("--rpoints", rpoints, "r/lambda samples over (0, rmax]");
  fig->add_option("--rmax", rmax, "largest r/lambda of the distance sweeps");
  fig->add_option("--tfixed", tfixed, "gamma t of the alpha2 and distance sweeps");
  fig->add_option("--vgrid", vgrid, "local-unitary lattice AxBxC");
  fig->add_option("--out", out_path, "output directory");
  fig->add_flag("--svg", svg, "also write SVG plots");
  fig->add_option("--jobs", jobs, "worker threads (0: available parallelism)");

  auto* verify = app.add_subcommand("verify", "run the oracle suites");
  std::string suite = "all";
  std::uint64_t seed = 20251014;
  std::optional<double> tol;
  std::vector<std::string> choices = suite_names();
  choices.insert(choices.begin(), "all");
  verify->add_option("--suite", suite, "suite name")->check(CLI::IsMember(choices));
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--tol", tol, "override every tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (measures->parsed()) return cmd_measures(state_path, csv, symmetric, out);
    if (fig->parsed()) {
      FigureConfig c = default_figure_config(figure_id);
      if (alpha2) c.alpha2 = *alpha2;
      if (p) c.p = *p;
      if (r) c.r_over_lambda = *r;
      if (omega) c.omega = *omega;
      if (tmax) c.t_max = *tmax;
      if (tpoints) c.t_points = *tpoints;
      if (apoints) c.alpha_points = *apoints;
      if (rpoints) c.r_points = *rpoints;
      if (rmax) c.r_max = *rmax;
      if (tfixed) c.t_fixed = *tfixed;
      if (vgrid) c.vgrid = parse_vgrid(*vgrid);
      c.jobs = jobs;
      return cmd_fig(c, out_path, svg, out, err);
    }
    return cmd_verify(suite, seed, tol, out);
  } catch (const ValidationError& e) {
    err << "qcorr: " << e.what() << '\n';
    return kInputError;
  } catch (const IntegrationError& e) {
    err << "qcorr: numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const std::ios_base::failure& e) {
    err << "qcorr: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace qcorr::app
