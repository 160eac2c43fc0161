#include "qcorr_app/verify.hpp"

#include <algorithm>
#include <cmath>

#include "qcorr/dynamics.hpp"
#include "qcorr/error.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/random.hpp"
#include "qcorr/robustness.hpp"

namespace qcorr::app {

namespace {

void record(Check& c, double err) { c.max_error = std::max(c.max_error, err); }

SuiteResult analytic_vs_integrator(Rng&) {
  SuiteResult r{"analytic-vs-integrator", 0, {{"elementwise", 0.0, 1e-8}}};
  const auto times = uniform_grid(6.0, 121);
  for (double a2 : {0.2, 0.5, 0.9})
    for (double rl : {0.3, 0.6737, 1.5}) {
      const AtomPairParams params(rl);
      const auto exact = propagate_analytic(std::sqrt(a2), params, times);
      const auto num = integrate(exact.states.front(), params, times);
      for (std::size_t i = 0; i < times.size(); ++i)
        record(r.checks[0], exact.states[i].matrix().max_abs_diff(num.states[i].matrix()));
      ++r.cases;
    }
  return r;
}

SuiteResult qd_closed_form(Rng& rng) {
  SuiteResult r{"qd-closed-form", 0, {{"qd", 0.0, 1e-6}}};
  for (int i = 0; i < 100; ++i) {
    const XState x = random_x_state(rng);
    const double closed = qd_x(x).value;
    const double brute = qd_bruteforce(x.to_density()).value;
    record(r.checks[0], std::abs(closed - brute));
    ++r.cases;
  }
  return r;
}

SuiteResult gmqd_closed_form(Rng& rng) {
  SuiteResult r{"gmqd-closed-form", 0, {{"eigenvalues", 0.0, 1e-10}}};
  for (int i = 0; i < 1000; ++i) {
    const XState x = random_x_state(rng);
    auto closed = gmqd_x_eigenvalues(x);
    std::sort(closed.begin(), closed.end(), std::greater<>());
    const auto generic = gmqd(x.to_density()).k;
    for (std::size_t k = 0; k < 3; ++k) record(r.checks[0], std::abs(closed[k] - generic[k]));
    ++r.cases;
  }
  return r;
}

SuiteResult lu_invariance(Rng& rng) {
  // Grid QD is only good to the grid resolution.
  SuiteResult r{"lu-invariance", 0, {{"closed-form measures", 0.0, 1e-8}, {"grid qd", 0.0, 1e-5}}};
  ReportOptions opts;
  opts.qd_grid = SphereGrid::production();
  for (int i = 0; i < 40; ++i) {
    const DensityMatrix rho = i % 2 ? random_density_matrix(rng) : random_x_state(rng).to_density();
    const DensityMatrix rotated = apply_local(rho, random_unitary(rng), Subsystem::B);
    const auto a = correlations(rho, opts);
    const auto b = correlations(rotated, opts);
    for (Measure m : {Measure::Concurrence, Measure::EoF, Measure::MID, Measure::GMQD})
      record(r.checks[0], std::abs(value_of(a, m) - value_of(b, m)));
    record(r.checks[1], std::abs(a.qd - b.qd));
    ++r.cases;
  }
  return r;
}

}  // namespace

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"analytic-vs-integrator", "qd-closed-form", "gmqd-closed-form",
                                              "lu-invariance"};
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::optional<double> tolerance) {
  Rng rng(seed);
  SuiteResult r;
  if (name == "analytic-vs-integrator")
    r = analytic_vs_integrator(rng);
  else if (name == "qd-closed-form")
    r = qd_closed_form(rng);
  else if (name == "gmqd-closed-form")
    r = gmqd_closed_form(rng);
  else if (name == "lu-invariance")
    r = lu_invariance(rng);
  else
    throw ValidationError("unknown suite '" + name + "'");
  if (tolerance)
    for (auto& c : r.checks) c.tolerance = *tolerance;
  return r;
}

}  // namespace qcorr::app
