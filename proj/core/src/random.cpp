#include "qcorr/random.hpp"

#include <numbers>

namespace qcorr {

namespace {

template <std::size_t N>
Mat<N> random_positive(Rng& rng) {
  std::normal_distribution<double> g;
  Mat<N> a;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) a(r, c) = cplx(g(rng), g(rng));
  Mat<N> m = a * a.adjoint();
  return m * (1.0 / m.trace().real());
}

}  // namespace

DensityMatrix random_density_matrix(Rng& rng) { return DensityMatrix(random_positive<4>(rng)); }

XState random_x_state(Rng& rng) {
  std::exponential_distribution<double> e;
  std::uniform_real_distribution<double> u;
  std::array<double, 4> p{e(rng), e(rng), e(rng), e(rng)};
  const double s = p[0] + p[1] + p[2] + p[3];
  for (auto& v : p) v /= s;
  XState x;
  x.rho11 = p[0];
  x.rho22 = p[1];
  x.rho33 = p[2];
  x.rho44 = 1.0 - p[0] - p[1] - p[2];
  const double two_pi = 2.0 * std::numbers::pi;
  x.rho14 = std::polar(std::sqrt(x.rho11 * x.rho44) * u(rng), two_pi * u(rng));
  x.rho23 = std::polar(std::sqrt(x.rho22 * x.rho33) * u(rng), two_pi * u(rng));
  return x;
}

CMat2 random_unitary(Rng& rng) {
  // Unit quaternion -> SU(2), times a random global phase.
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u;
  double q[4] = {g(rng), g(rng), g(rng), g(rng)};
  const double n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
  for (auto& v : q) v /= n;
  CMat2 m;
  m(0, 0) = cplx(q[0], q[3]);
  m(0, 1) = cplx(q[2], q[1]);
  m(1, 0) = cplx(-q[2], q[1]);
  m(1, 1) = cplx(q[0], -q[3]);
  return m * std::polar(1.0, 2.0 * std::numbers::pi * u(rng));
}

DensityMatrix random_product_state(Rng& rng, CMat2* rho_a, CMat2* rho_b) {
  const CMat2 a = random_positive<2>(rng);
  const CMat2 b = random_positive<2>(rng);
  if (rho_a) *rho_a = a;
  if (rho_b) *rho_b = b;
  return DensityMatrix(kron(a, b));
}

}  // namespace qcorr
