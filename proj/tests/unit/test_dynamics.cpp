#include "qcorr/dynamics.hpp"

#include <numbers>

#include "oracle_values.hpp"
#include "qcorr/error.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/robustness.hpp"
#include "support.hpp"

using namespace qcorr;

TEST_CASE("collective rates") {
  const auto a = collective_rates(0.3);
  CHECK_NEAR(a.gamma12, oracle::kRates_0_3[0], 1e-14);
  CHECK_NEAR(a.Omega12, oracle::kRates_0_3[1], 1e-14);
  const auto b = collective_rates(0.6737);
  CHECK_NEAR(b.gamma12, oracle::kRates_0_6737[0], 1e-14);
  CHECK_NEAR(b.Omega12, oracle::kRates_0_6737[1], 1e-14);
  const auto c = collective_rates(1.5);
  CHECK_NEAR(c.gamma12, oracle::kRates_1_5[0], 1e-14);
  CHECK_NEAR(c.Omega12, oracle::kRates_1_5[1], 1e-14);

  CHECK_NEAR(collective_rates(1e-6).gamma12, 1.0, 1e-10);
  CHECK_THROWS_AS(collective_rates(0.0), ValidationError);
  CHECK_THROWS_AS(collective_rates(-1.0), ValidationError);
}

TEST_CASE("collective damping near r/lambda = 0.6737 is a local minimum") {
  const double g0 = collective_rates(0.6737).gamma12;
  CHECK_NEAR(g0, -0.335, 5e-4);
  for (double d : {-0.01, -0.005, 0.005, 0.01}) CHECK(collective_rates(0.6737 + d).gamma12 > g0);
}

TEST_CASE("collective damping decays with distance") {
  for (double r = 10.0; r <= 20.0; r += 0.1) CHECK(std::abs(collective_rates(r).gamma12) <= 0.15);
  // Envelope 1.5 / (2 pi r) of the leading term.
  double peak_near = 0, peak_far = 0;
  for (double r = 10.0; r < 11.0; r += 0.01) peak_near = std::max(peak_near, std::abs(collective_rates(r).gamma12));
  for (double r = 20.0; r < 21.0; r += 0.01) peak_far = std::max(peak_far, std::abs(collective_rates(r).gamma12));
  CHECK(peak_far < peak_near);
}

TEST_CASE("series and closed form meet smoothly") {
  const double r_switch = 0.05 / (2 * std::numbers::pi);
  const double below = collective_rates(r_switch * (1 - 1e-9)).gamma12;
  const double above = collective_rates(r_switch * (1 + 1e-9)).gamma12;
  // The closed form cancels to about eps / x^3 at the switch.
  CHECK_NEAR(below, above, 1e-11);
}

TEST_CASE("AtomPairParams validation") {
  CHECK_THROWS_AS(AtomPairParams(0.3, 0.0, 0.0), ValidationError);
  CHECK_THROWS_AS(AtomPairParams(0.0), ValidationError);
  const AtomPairParams p(0.6737, 2.0, 3.0);
  CHECK_NEAR(p.gamma12(), 3.0 * oracle::kRates_0_6737[0], 1e-13);
  CHECK(p.omega() == 2.0);
}

TEST_CASE("analytic propagator") {
  const AtomPairParams p(0.6737);
  const std::vector<double> times{0.0};
  CHECK(propagate_analytic(std::sqrt(0.9), p, times).states[0].matrix().max_abs_diff(
            bell_like(std::sqrt(0.9)).matrix()) <= 1e-15);

  for (double gt : {0.1, 1.0, 4.0}) {
    const XState x = analytic_state(1.0, p, gt);
    CHECK(x.rho14 == cplx(0.0));
    CHECK_NEAR(x.rho11, std::exp(-2 * gt), 1e-15);
  }

  const XState late = analytic_state(std::sqrt(0.9), p, 60.0);
  CHECK_NEAR(late.rho44, 1.0, 1e-12);

  CHECK_THROWS_AS(uniform_grid(1.0, 1), ValidationError);
  const std::vector<double> bad{0.0, 0.5, 0.5};
  CHECK_THROWS_AS(propagate_analytic(0.5, p, bad), ValidationError);
}

TEST_CASE("analytic propagator is finite as gamma12 approaches gamma") {
  const AtomPairParams close(1e-5);
  const AtomPairParams near(2e-3);
  for (double gt : {0.3, 2.0, 10.0}) {
    const XState a = analytic_state(std::sqrt(0.7), close, gt);
    const XState b = analytic_state(std::sqrt(0.7), near, gt);
    CHECK(std::isfinite(a.rho22));
    CHECK(std::isfinite(a.rho23.real()));
    CHECK_NOTHROW(a.validate());
    // Smooth in r: nearby distances give nearby states.
    CHECK_NEAR(a.rho22, b.rho22, 1e-3);
  }
  // Integrator agreement in the near-degenerate regime.
  const auto times = uniform_grid(3.0, 31);
  const auto exact = propagate_analytic(std::sqrt(0.7), close, times);
  const auto num = integrate(exact.states[0], close, times);
  for (std::size_t i = 0; i < times.size(); ++i)
    CHECK(exact.states[i].matrix().max_abs_diff(num.states[i].matrix()) <= 1e-8);
}

TEST_CASE("lindblad_rhs") {
  const AtomPairParams p(0.6737, 1.5);
  const DensityMatrix ground(CMat4::diagonal({0, 0, 0, 1}));
  CHECK(lindblad_rhs(ground.matrix(), p).frobenius_norm() <= 1e-15);

  const CMat4 d = lindblad_rhs(CMat4::diagonal({1, 0, 0, 0}), p);
  CHECK_NEAR(d(0, 0).real(), -2.0, 1e-15);

  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const CMat4 rhs = lindblad_rhs(random_density_matrix(rng).matrix(), p);
    CHECK(std::abs(rhs.trace()) <= 1e-14);
    CHECK(rhs.is_hermitian(1e-14));
  }
}

TEST_CASE("integrator matches the analytic propagator") {
  const auto times = uniform_grid(6.0, 121);
  for (double a2 : {0.2, 0.5, 0.9})
    for (double r : {0.3, 0.6737, 1.5}) {
      const AtomPairParams p(r);
      const auto exact = propagate_analytic(std::sqrt(a2), p, times);
      const auto num = integrate(exact.states[0], p, times);
      CHECK(num.source == TrajectorySource::Integrated);
      double err = 0;
      for (std::size_t i = 0; i < times.size(); ++i)
        err = std::max(err, exact.states[i].matrix().max_abs_diff(num.states[i].matrix()));
      INFO("alpha2 = ", a2, ", r = ", r);
      CHECK(err <= 1e-8);
      CHECK(num.max_trace_drift <= 1e-9);
    }
}

TEST_CASE("integrated states stay physical") {
  Rng rng(15);
  const AtomPairParams p(0.6737, 2.0);
  const auto times = uniform_grid(4.0, 41);
  for (int i = 0; i < 5; ++i) {
    const auto tr = integrate(random_density_matrix(rng), p, times);
    for (const auto& s : tr.states) {
      CHECK_NEAR(s.matrix().trace().real(), 1.0, 1e-9);
      CHECK(herm_eig(s.matrix()).values[3] >= -1e-7);
    }
  }
}

TEST_CASE("ground state is stationary") {
  const DensityMatrix ground(CMat4::diagonal({0, 0, 0, 1}));
  const auto tr = integrate(ground, AtomPairParams(0.4, 3.0), uniform_grid(5.0, 11));
  for (const auto& s : tr.states) CHECK(s.matrix().max_abs_diff(ground.matrix()) <= 1e-12);
}

TEST_CASE("integration preserves the X structure of Werner-like states") {
  const auto tr = integrate(werner_like(std::sqrt(0.5), 0.65), AtomPairParams(0.6737), uniform_grid(6.0, 61));
  for (const auto& s : tr.states) CHECK(as_x_state(s, 1e-10).has_value());
}

TEST_CASE("locally rotated initial states evolve out of the X family") {
  Rng rng(19);
  const DensityMatrix rho0 = apply_local(bell_like(std::sqrt(0.5)), random_unitary(rng), Subsystem::B);
  const auto tr = integrate(rho0, AtomPairParams(0.6737), uniform_grid(2.0, 21));
  CHECK_FALSE(as_x_state(tr.states[5]).has_value());
}

TEST_CASE("measures do not depend on the transition frequency") {
  const auto times = uniform_grid(6.0, 61);
  const auto slow = propagate_analytic(std::sqrt(0.9), AtomPairParams(0.6737, 0.0), times);
  const auto fast = propagate_analytic(std::sqrt(0.9), AtomPairParams(0.6737, 10.0), times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto a = correlations(slow.states[i]);
    const auto b = correlations(fast.states[i]);
    CHECK_NEAR(a.eof, b.eof, 1e-8);
    CHECK_NEAR(a.mid, b.mid, 1e-8);
    CHECK_NEAR(a.qd, b.qd, 1e-8);
    CHECK_NEAR(a.gmqd, b.gmqd, 1e-8);
  }
}

TEST_CASE("state_at") {
  const AtomPairParams p(0.6737);
  const auto times = uniform_grid(2.0, 21);
  const auto exact = propagate_analytic(std::sqrt(0.8), p, times);
  const auto num = integrate(exact.states[0], p, times);
  for (double gt : {0.0, 0.33, 1.0, 1.999, 2.0}) {
    const auto want = analytic_state(std::sqrt(0.8), p, gt).to_density().matrix();
    CHECK(state_at(exact, gt).matrix().max_abs_diff(want) <= 1e-15);
    CHECK(state_at(num, gt).matrix().max_abs_diff(want) <= 1e-8);
  }
  CHECK_THROWS_AS(state_at(exact, 2.5), ValidationError);
}

TEST_CASE("positivity loss raises IntegrationError") {
  IntegratorOptions strict;
  strict.psd_tol = -1.0;  // no state can meet this
  const auto times = uniform_grid(1.0, 3);
  CHECK_THROWS_AS(integrate(bell_like(0.5), AtomPairParams(0.6737), times, strict), IntegrationError);
}
