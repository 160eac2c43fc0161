// Two atoms coupled to the vacuum field: collective rates, the exact
// propagator for the Bell-like initial state, and a Lindblad integrator
// for arbitrary initial states.
//
// Times are always the dimensionless gamma*t. Rates are stored in units of
// gamma.

#pragma once

#include <span>
#include <vector>

#include "qcorr/states.hpp"

namespace qcorr {

struct CollectiveRates {
  double gamma12 = 0.0;  // collective damping / gamma
  double Omega12 = 0.0;  // dipole-dipole shift / gamma
};

// Dipoles perpendicular to the interatomic axis, kr = 2 pi r/lambda.
// Throws ValidationError for r_over_lambda <= 0.
CollectiveRates collective_rates(double r_over_lambda);

class AtomPairParams {
 public:
  // omega is the transition frequency in units of gamma; 0 is the
  // rotating frame.
  explicit AtomPairParams(double r_over_lambda, double omega = 0.0, double gamma = 1.0);

  double gamma() const { return gamma_; }
  double omega() const { return omega_; }
  double r_over_lambda() const { return r_; }
  double gamma12() const { return gamma_ * rates_.gamma12; }
  double Omega12() const { return gamma_ * rates_.Omega12; }

 private:
  double gamma_;
  double omega_;
  double r_;
  CollectiveRates rates_;
};

enum class TrajectorySource { Analytic, Integrated };

struct Trajectory {
  std::vector<double> times;  // gamma t, strictly increasing
  std::vector<DensityMatrix> states;
  TrajectorySource source = TrajectorySource::Analytic;
  AtomPairParams params{1.0};
  double alpha = 0.0;              // initial amplitude, analytic trajectories only
  double max_trace_drift = 0.0;    // largest |tr - 1| removed by renormalisation
};

std::vector<double> uniform_grid(double t_max, int points);

// rho(t) for alpha|e1 e2> + sqrt(1 - alpha^2)|g1 g2> at gamma t.
XState analytic_state(double alpha, const AtomPairParams& params, double gamma_t);

Trajectory propagate_analytic(double alpha, const AtomPairParams& params, std::span<const double> times);

// d rho / d(t) in units where time is physical t; multiply by 1/gamma for
// d/d(gamma t).
CMat4 lindblad_rhs(const CMat4& rho, const AtomPairParams& params);

struct IntegratorOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double psd_tol = 1e-7;    // eigenvalues below -psd_tol raise IntegrationError
  double drift_tol = 1e-9;  // trace drift beyond this raises IntegrationError
};

// Adaptive Dormand-Prince 5(4). Throws IntegrationError on positivity loss.
Trajectory integrate(const DensityMatrix& rho0, const AtomPairParams& params, std::span<const double> times,
                     const IntegratorOptions& options = {});

// Single evolution from gamma t0 to gamma t1.
DensityMatrix evolve(const DensityMatrix& rho, const AtomPairParams& params, double gamma_t0, double gamma_t1,
                     const IntegratorOptions& options = {});

// State of the trajectory at an arbitrary gamma t inside its span:
// re-evaluated analytically, or integrated from the nearest earlier sample.
DensityMatrix state_at(const Trajectory& trajectory, double gamma_t);

}  // namespace qcorr
