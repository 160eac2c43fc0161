#pragma once

#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "qcorr/random.hpp"
#include "qcorr/states.hpp"

#define CHECK_NEAR(actual, expected, tol)                             \
  do {                                                                \
    const double actual_ = (actual);                                  \
    const double expected_ = (expected);                              \
    INFO(#actual " = ", actual_, ", expected ", expected_);           \
    CHECK(std::abs(actual_ - expected_) <= (tol));                    \
  } while (0)

namespace test {

using qcorr::cplx;

inline qcorr::CMat4 matrix_from(const std::array<cplx, 16>& e) {
  qcorr::CMat4 m;
  for (std::size_t i = 0; i < 16; ++i) m(i / 4, i % 4) = e[i];
  return m;
}

inline qcorr::DensityMatrix density_from(const std::array<cplx, 16>& e) {
  return qcorr::DensityMatrix(matrix_from(e));
}

inline qcorr::DensityMatrix diagonal_state(double p1, double p2, double p3, double p4) {
  return qcorr::DensityMatrix(qcorr::CMat4::diagonal({p1, p2, p3, p4}));
}

template <std::size_t N>
qcorr::Mat<N> random_hermitian(qcorr::Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  qcorr::Mat<N> m;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) m(r, c) = cplx(g(rng), g(rng));
  return m.hermitian_part();
}

inline qcorr::CMat2 random_matrix2(qcorr::Rng& rng) {
  std::normal_distribution<double> g;
  qcorr::CMat2 m;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) m(r, c) = cplx(g(rng), g(rng));
  return m;
}

// A random single-qubit density matrix.
inline qcorr::CMat2 random_qubit(qcorr::Rng& rng) {
  const qcorr::CMat2 a = random_matrix2(rng);
  qcorr::CMat2 m = a * a.adjoint();
  return m * (1.0 / m.trace().real());
}

}  // namespace test
