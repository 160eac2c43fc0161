// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance            all criteria
//   acceptance 4 8        only those

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "qcorr/dynamics.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/random.hpp"
#include "qcorr/robustness.hpp"

using namespace qcorr;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const AtomPairParams kParams(0.6737);

Trajectory reference(int points = 601) {
  return propagate_analytic(std::sqrt(0.9), kParams, uniform_grid(6.0, points));
}

bool overlaps(const TimeWindow& w, double lo, double hi) {
  const double slack = 0.05;
  return w.start <= hi + slack && w.end >= lo - slack;
}

Outcome oracle_equivalence() {
  const auto times = uniform_grid(6.0, 601);
  double worst = 0;
  for (double a2 : {0.2, 0.5, 0.9})
    for (double r : {0.3, 0.6737, 1.5}) {
      const AtomPairParams p(r);
      const auto exact = propagate_analytic(std::sqrt(a2), p, times);
      const auto num = integrate(exact.states[0], p, times);
      for (std::size_t i = 0; i < times.size(); ++i)
        worst = std::max(worst, exact.states[i].matrix().max_abs_diff(num.states[i].matrix()));
    }
  return {worst <= 1e-8, fmt("max elementwise error %.2e (tol 1e-8)", worst)};
}

Outcome qd_closed_form() {
  Rng rng(500);
  double random_err = 0;
  for (int i = 0; i < 500; ++i) {
    const XState x = random_x_state(rng);
    random_err = std::max(random_err, std::abs(qd_x(x).value - qd_bruteforce(x.to_density()).value));
  }
  double traj_err = 0;
  const Trajectory tr = reference();
  for (const auto& s : tr.states) {
    const XState x = *as_x_state(s);
    traj_err = std::max(traj_err, std::abs(qd_x(x).value - qd_bruteforce(s).value));
  }
  return {random_err <= 1e-6 && traj_err <= 1e-6,
          fmt("random X states %.2e, trajectory %.2e (tol 1e-6)", random_err, traj_err)};
}

Outcome gmqd_closed_form() {
  Rng rng(1000);
  double err = 0;
  for (int i = 0; i < 1000; ++i) {
    const XState x = random_x_state(rng);
    auto closed = gmqd_x_eigenvalues(x);
    std::sort(closed.begin(), closed.end(), std::greater<>());
    const auto generic = gmqd(x.to_density()).k;  // eigensolver on K, descending
    for (std::size_t k = 0; k < 3; ++k) err = std::max(err, std::abs(closed[k] - generic[k]));
  }
  const DensityMatrix bell = bell_like(std::sqrt(0.5));
  const double bell_err = std::max(std::abs(gmqd(bell).value - 0.5), std::abs(gmqd_x(*as_x_state(bell)).value - 0.5));
  return {err <= 1e-10 && bell_err <= 1e-12,
          fmt("eigenvalue error %.2e (tol 1e-10), Bell |gmqd - 1/2| %.2e (tol 1e-12)", err, bell_err)};
}

Outcome esd_vs_persistence() {
  const Trajectory tr = reference();
  const EsdReport e = esd_time(tr);
  const bool finite_esd = e.esd_time && *e.esd_time > 0.0 && *e.esd_time < 6.0;
  const auto series = MeasureSeries::from(tr, reports_for(tr));

  std::string detail = finite_esd ? fmt("esd at gamma t = %.6f;", *e.esd_time) : std::string("no finite esd;");
  bool persistent = true;
  for (Measure m : {Measure::MID, Measure::QD, Measure::GMQD}) {
    const auto& v = series[m];
    // Longest run of consecutive grid points at or below 1e-4 on (0, 6].
    std::size_t run = 0, longest = 0, below = 0;
    double first_below = -1, smallest = 1e9;
    for (std::size_t i = 1; i < v.size(); ++i) {
      smallest = std::min(smallest, v[i]);
      if (v[i] <= 1e-4) {
        if (first_below < 0) first_below = series.times[i];
        ++below;
        longest = std::max(longest, ++run);
      } else {
        run = 0;
      }
    }
    const bool ok = longest <= 1;
    persistent = persistent && ok;
    detail += fmt(" %s min %.3e", to_string(m), smallest);
    if (!ok) detail += fmt(" (%zu points <= 1e-4 from gamma t = %.2f)", below, first_below);
  }
  return {finite_esd && persistent, detail};
}

Outcome ordering_windows() {
  const Trajectory tr = reference();
  const auto series = MeasureSeries::from(tr, reports_for(tr));
  const SlopeRequirement gmqd_up[] = {{Measure::GMQD, 1}, {Measure::QD, -1}, {Measure::MID, -1}};
  const auto w1 = pattern_windows(series, gmqd_up);

  const SlopeRequirement qd_up[] = {{Measure::QD, 1}, {Measure::MID, -1}, {Measure::GMQD, -1}};
  const SlopeRequirement qd_down[] = {{Measure::QD, -1}, {Measure::MID, 1}, {Measure::GMQD, 1}};
  auto w2 = pattern_windows(series, qd_up);
  const auto w3 = pattern_windows(series, qd_down);
  w2.insert(w2.end(), w3.begin(), w3.end());

  auto hit = [](const std::vector<TimeWindow>& ws, double lo, double hi, std::string& detail) {
    for (const auto& w : ws)
      if (overlaps(w, lo, hi)) {
        detail += fmt(" [%.3f, %.3f]", w.start, w.end);
        return true;
      }
    detail += fmt(" none for [%.3f, %.3f]", lo, hi);
    return false;
  };
  std::string detail = "gmqd-up window";
  bool ok = hit(w1, 0.639, 0.888, detail);
  detail += "; qd-opposing windows";
  ok = hit(w2, 2.304, 2.604, detail) && ok;
  ok = hit(w2, 3.672, 4.164, detail) && ok;
  return {ok, detail};
}

Outcome branch_structure() {
  const KinkReport k = detect_kinks(reference());
  std::string detail = fmt("qd flips %zu:", k.qd.size());
  for (const auto& x : k.qd) detail += fmt(" %s->%s at %.5f", x.from.c_str(), x.to.c_str(), x.time);
  detail += fmt("; gmqd flips %zu:", k.gmqd.size());
  for (const auto& x : k.gmqd) detail += fmt(" %s->%s at %.5f", x.from.c_str(), x.to.c_str(), x.time);
  const bool gmqd_ok = k.gmqd.size() == 2 && k.gmqd[0].from == "k3" && k.gmqd[0].to == "k1" &&
                       k.gmqd[1].from == "k1" && k.gmqd[1].to == "k3";
  return {k.qd.size() == 1 && gmqd_ok, detail};
}

Outcome lu_invariance() {
  Rng rng(200);
  const DensityMatrix initial[] = {bell_like(std::sqrt(0.9)), werner_like(std::sqrt(0.5), 0.65)};
  double closed = 0, grid = 0;
  for (const DensityMatrix& rho : initial) {
    const auto base = correlations(rho);
    for (int i = 0; i < 200; ++i) {
      const auto r = correlations(apply_local(rho, random_unitary(rng), Subsystem::B));
      closed = std::max({closed, std::abs(r.concurrence - base.concurrence), std::abs(r.eof - base.eof),
                         std::abs(r.mid - base.mid), std::abs(r.gmqd - base.gmqd)});
      grid = std::max(grid, std::abs(r.qd - base.qd));
    }
  }
  return {closed <= 1e-8 && grid <= 1e-5, fmt("C/EoF/MID/GMQD %.2e (tol 1e-8), grid QD %.2e (tol 1e-5)", closed, grid)};
}

Outcome robustness_envelope() {
  const auto times = uniform_grid(6.0, 601);
  const auto lattice = unitary_lattice(9, 12, 12);
  const Envelope env = envelope(werner_like(std::sqrt(0.5), 0.65), kParams, lattice, times);
  const std::size_t t1 = 100;  // gamma t = 1
  bool widths = true;
  std::string detail = fmt("%zu points;", lattice.size());
  for (Measure m : kAllMeasures) {
    const auto k = static_cast<std::size_t>(m);
    const double w = env.max[k][t1] - env.min[k][t1];
    widths = widths && w > 0.0;
    detail += fmt(" %s width %.3e", to_string(m), w);
  }
  const std::size_t skipped = std::count(env.completed.begin(), env.completed.end(), false);
  detail += fmt("; no-esd points %zu; skipped %zu", env.no_esd.size(), skipped);
  return {widths && !env.no_esd.empty(), detail};
}

Outcome revival() {
  const EsdReport e = esd_time(reference());
  for (const auto& r : e.revivals)
    if (r.branch == ConcurrenceBranch::C2 && e.esd_time && r.window.start > *e.esd_time)
      return {true, fmt("C2 > 0 on [%.6f, %.6f]", r.window.start, r.window.end)};
  return {false, fmt("%zu revival windows, none on C2", e.revivals.size())};
}

Outcome pure_state_equality() {
  double qd_err = 0, mid_err = 0;
  for (int i = 0; i <= 100; ++i) {
    const auto r = correlations(bell_like(i / 100.0));
    qd_err = std::max(qd_err, std::abs(r.eof - r.qd));
    mid_err = std::max(mid_err, std::abs(r.eof - r.mid));
  }
  return {qd_err <= 1e-6 && mid_err <= 1e-6, fmt("|EoF-QD| %.2e, |EoF-MID| %.2e (tol 1e-6)", qd_err, mid_err)};
}

Outcome omega_independence() {
  const auto times = uniform_grid(6.0, 601);
  double err = 0;
  const DensityMatrix rho0 = bell_like(std::sqrt(0.9));
  const auto a = integrate(rho0, AtomPairParams(0.6737, 0.0), times);
  const auto b = integrate(rho0, AtomPairParams(0.6737, 10.0), times);
  const auto ca = MeasureSeries::from(a, reports_for(a));
  const auto cb = MeasureSeries::from(b, reports_for(b));
  for (Measure m : kAllMeasures)
    for (std::size_t i = 0; i < times.size(); ++i) err = std::max(err, std::abs(ca[m][i] - cb[m][i]));
  return {err <= 1e-8, fmt("max pointwise difference %.2e (tol 1e-8)", err)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
  double limit_s = 0;  // 0: no runtime bound
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "integrator vs analytic propagator", oracle_equivalence, 30},
      {2, "qd closed form vs brute force", qd_closed_form, 120},
      {3, "gmqd closed-form spectrum", gmqd_closed_form},
      {4, "esd vs persistence", esd_vs_persistence},
      {5, "ordering windows", ordering_windows},
      {6, "branch structure", branch_structure},
      {7, "local-unitary invariance", lu_invariance},
      {8, "robustness envelope", robustness_envelope, 600},
      {9, "entanglement revival", revival},
      {10, "pure-state equality", pure_state_equality},
      {11, "omega independence", omega_independence},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  int failures = 0;
  for (const auto& c : criteria()) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs >= c.limit_s) {
      o.pass = false;
      o.detail += fmt("; over the %.0f s budget", c.limit_s);
    }
    std::printf("criterion %2d %-36s %s  (%.1f s)  %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", secs,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
