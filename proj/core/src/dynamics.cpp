#include "qcorr/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "qcorr/error.hpp"

namespace qcorr {

namespace {

using namespace std::complex_literals;

// (1 - exp(-x t)) / x, finite as x -> 0.
double relaxation_factor(double x, double t) {
  if (std::abs(x) < 1e-6) {
    const double xt = x * t;
    return t * (1.0 - xt / 2.0 + xt * xt / 6.0);
  }
  return -std::expm1(-x * t) / x;
}

struct Generator {
  CMat4 hamiltonian;
  CMat4 anticommutator;  // sum_ij gamma_ij S_i^+ S_j^-
  std::array<CMat4, 2> lowering;
  std::array<std::array<double, 2>, 2> rates;

  explicit Generator(const AtomPairParams& p) {
    CMat2 lower;  // |g><e|
    lower(1, 0) = 1.0;
    const CMat2 id = sigma(0);
    const CMat2 sz = sigma(3) * 0.5;
    lowering = {kron(lower, id), kron(id, lower)};
    const CMat4 raise1 = lowering[0].adjoint();
    const CMat4 raise2 = lowering[1].adjoint();

    hamiltonian = (kron(sz, id) + kron(id, sz)) * p.omega() +
                  (raise1 * lowering[1] + raise2 * lowering[0]) * p.Omega12();
    rates = {{{p.gamma(), p.gamma12()}, {p.gamma12(), p.gamma()}}};
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        anticommutator += lowering[i].adjoint() * lowering[j] * rates[i][j];
  }

  CMat4 operator()(const CMat4& rho) const {
    CMat4 out = (hamiltonian * rho - rho * hamiltonian) * -1i;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        out += lowering[j] * rho * lowering[i].adjoint() * rates[i][j];
    out -= (anticommutator * rho + rho * anticommutator) * 0.5;
    return out;
  }
};

using OdeState = std::array<double, 32>;

OdeState pack(const CMat4& m) {
  OdeState s{};
  for (std::size_t i = 0; i < 16; ++i) {
    s[2 * i] = m.data()[i].real();
    s[2 * i + 1] = m.data()[i].imag();
  }
  return s;
}

CMat4 unpack(const OdeState& s) {
  CMat4 m;
  for (std::size_t i = 0; i < 16; ++i) m(i / 4, i % 4) = cplx(s[2 * i], s[2 * i + 1]);
  return m;
}

class Evolver {
 public:
  Evolver(const AtomPairParams& params, const IntegratorOptions& options)
      : params_(params), options_(options), generator_(params) {}

  // Advances `rho` between two gamma t values and returns the cleaned-up
  // density matrix.
  DensityMatrix step(const CMat4& rho, double gt0, double gt1, double& max_drift) const {
    namespace odeint = boost::numeric::odeint;
    OdeState x = pack(rho);
    auto system = [this](const OdeState& s, OdeState& ds, double) { ds = pack(generator_(unpack(s))); };
    auto stepper = odeint::make_controlled(options_.abs_tol, options_.rel_tol, odeint::runge_kutta_dopri5<OdeState>());
    const double t0 = gt0 / params_.gamma();
    const double t1 = gt1 / params_.gamma();
    if (t1 > t0) odeint::integrate_adaptive(stepper, system, x, t0, t1, std::min(t1 - t0, 1e-2));

    CMat4 m = unpack(x);
    for (const auto& z : m.data())
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw IntegrationError("integration produced non-finite entries at gamma t = " + std::to_string(gt1));
    m = m.hermitian_part();
    const double tr = m.trace().real();
    const double drift = std::abs(tr - 1.0);
    max_drift = std::max(max_drift, drift);
    if (drift > options_.drift_tol)
      throw IntegrationError("trace drift " + std::to_string(drift) + " at gamma t = " + std::to_string(gt1));
    m *= 1.0 / tr;
    const double min_eig = herm_eig(m).values[3];
    if (min_eig < -options_.psd_tol)
      throw IntegrationError("positivity lost (min eigenvalue " + std::to_string(min_eig) + ") at gamma t = " +
                             std::to_string(gt1));
    return DensityMatrix(m, options_.psd_tol);
  }

 private:
  AtomPairParams params_;
  IntegratorOptions options_;
  Generator generator_;
};

void check_grid(std::span<const double> times) {
  if (times.empty()) throw ValidationError("time grid is empty");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0) throw ValidationError("time grid must be finite and >= 0");
    if (i > 0 && !(times[i] > times[i - 1])) throw ValidationError("time grid must be strictly increasing");
  }
}

}  // namespace

CollectiveRates collective_rates(double r_over_lambda) {
  if (!(r_over_lambda > 0.0) || !std::isfinite(r_over_lambda))
    throw ValidationError("collective_rates: r/lambda must be > 0");
  const double x = 2.0 * std::numbers::pi * r_over_lambda;
  const double s = std::sin(x);
  const double c = std::cos(x);
  CollectiveRates out;
  if (x < 0.05) {
    const double x2 = x * x;
    out.gamma12 = 1.0 - x2 / 5.0 + 3.0 * x2 * x2 / 280.0 - x2 * x2 * x2 / 3780.0;
  } else {
    out.gamma12 = 1.5 * (s / x + c / (x * x) - s / (x * x * x));
  }
  out.Omega12 = 0.75 * (s / (x * x) + c / (x * x * x) - c / x);
  return out;
}

AtomPairParams::AtomPairParams(double r_over_lambda, double omega, double gamma)
    : gamma_(gamma), omega_(omega), r_(r_over_lambda), rates_(collective_rates(r_over_lambda)) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ValidationError("gamma must be > 0");
  if (!std::isfinite(omega)) throw ValidationError("omega must be finite");
  if (std::abs(rates_.gamma12) > 1.0 + 1e-12) throw ValidationError("|gamma12| exceeds gamma");
}

std::vector<double> uniform_grid(double t_max, int points) {
  if (points < 2) throw ValidationError("time grid needs at least 2 points");
  if (!(t_max > 0.0)) throw ValidationError("time grid needs t_max > 0");
  std::vector<double> t(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) t[static_cast<std::size_t>(i)] = t_max * i / (points - 1);
  return t;
}

XState analytic_state(double alpha, const AtomPairParams& p, double gamma_t) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in [0, 1]");
  const double g = p.gamma();
  const double t = gamma_t / g;
  const double gp = g + p.gamma12();
  const double gm = g - p.gamma12();
  const double a2 = alpha * alpha;

  // a1 [e^{-gp t} - e^{-2 g t}] and a2 [e^{-gm t} - e^{-2 g t}] in a form
  // that stays finite at gm -> 0.
  const double term1 = 0.5 * a2 * gp * std::exp(-gp * t) * relaxation_factor(gm, t);
  const double term2 = 0.5 * a2 * gm * std::exp(-gm * t) * relaxation_factor(gp, t);

  XState x;
  x.rho11 = a2 * std::exp(-2.0 * g * t);
  x.rho22 = term1 + term2;
  x.rho33 = x.rho22;
  x.rho44 = 1.0 - x.rho11 - x.rho22 - x.rho33;
  x.rho14 = alpha * std::sqrt(std::max(0.0, 1.0 - a2)) * std::exp(-g * t) * std::polar(1.0, -2.0 * p.omega() * t);
  x.rho23 = term1 - term2;
  return x;
}

Trajectory propagate_analytic(double alpha, const AtomPairParams& params, std::span<const double> times) {
  check_grid(times);
  Trajectory tr;
  tr.source = TrajectorySource::Analytic;
  tr.params = params;
  tr.alpha = alpha;
  tr.times.assign(times.begin(), times.end());
  tr.states.reserve(times.size());
  for (double t : times) tr.states.push_back(analytic_state(alpha, params, t).to_density());
  return tr;
}

CMat4 lindblad_rhs(const CMat4& rho, const AtomPairParams& params) { return Generator(params)(rho); }

Trajectory integrate(const DensityMatrix& rho0, const AtomPairParams& params, std::span<const double> times,
                     const IntegratorOptions& options) {
  check_grid(times);
  const Evolver evolver(params, options);
  Trajectory tr;
  tr.source = TrajectorySource::Integrated;
  tr.params = params;
  tr.times.assign(times.begin(), times.end());
  tr.states.reserve(times.size());

  double drift = 0.0;
  DensityMatrix current = times.front() > 0.0 ? evolver.step(rho0.matrix(), 0.0, times.front(), drift) : rho0;
  tr.states.push_back(current);
  for (std::size_t i = 1; i < times.size(); ++i) {
    current = evolver.step(current.matrix(), times[i - 1], times[i], drift);
    tr.states.push_back(current);
  }
  tr.max_trace_drift = drift;
  return tr;
}

DensityMatrix evolve(const DensityMatrix& rho, const AtomPairParams& params, double gamma_t0, double gamma_t1,
                     const IntegratorOptions& options) {
  if (gamma_t1 < gamma_t0) throw ValidationError("evolve: end time precedes start time");
  if (gamma_t1 == gamma_t0) return rho;
  double drift = 0.0;
  return Evolver(params, options).step(rho.matrix(), gamma_t0, gamma_t1, drift);
}

DensityMatrix state_at(const Trajectory& tr, double gamma_t) {
  if (tr.times.empty()) throw ValidationError("state_at: empty trajectory");
  if (gamma_t < tr.times.front() || gamma_t > tr.times.back())
    throw ValidationError("state_at: time outside the trajectory span");
  if (tr.source == TrajectorySource::Analytic) return analytic_state(tr.alpha, tr.params, gamma_t).to_density();
  auto it = std::upper_bound(tr.times.begin(), tr.times.end(), gamma_t);
  const auto i = static_cast<std::size_t>(std::distance(tr.times.begin(), it)) - 1;
  return evolve(tr.states[i], tr.params, tr.times[i], gamma_t);
}

}  // namespace qcorr
