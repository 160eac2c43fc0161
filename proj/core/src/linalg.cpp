#include "qcorr/linalg.hpp"

#include <algorithm>
#include <numeric>

#include "qcorr/error.hpp"

namespace qcorr {

CMat2 sigma(int i) {
  using namespace std::complex_literals;
  CMat2 m;
  switch (i) {
    case 0:
      m(0, 0) = 1.0;
      m(1, 1) = 1.0;
      break;
    case 1:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 2:
      m(0, 1) = -1i;
      m(1, 0) = 1i;
      break;
    case 3:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      throw ValidationError("sigma index must be 0..3");
  }
  return m;
}

namespace {

template <std::size_t N>
double off_diagonal_norm(const Mat<N>& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

}  // namespace

template <std::size_t N>
HermEig<N> herm_eig(const Mat<N>& input, double herm_tol) {
  if (!input.is_hermitian(herm_tol)) throw ValidationError("herm_eig: matrix is not Hermitian");

  Mat<N> a = input.hermitian_part();
  Mat<N> v = Mat<N>::identity();
  const double scale = std::max(1.0, a.frobenius_norm());

  for (int sweep = 0; sweep < 64; ++sweep) {
    if (off_diagonal_norm(a) <= 1e-14 * scale) break;
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        // Phase the pair to a real symmetric 2x2 problem, then rotate.
        const cplx phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // J = D R with D = diag(1, conj(phase)) on (p, q); A <- J^dagger A J,
        // V <- V J. Only rows and columns p, q change.
        const cplx jqp = -s * std::conj(phase);
        const cplx jqq = c * std::conj(phase);
        for (std::size_t i = 0; i < N; ++i) {
          const cplx aip = a(i, p), aiq = a(i, q);
          a(i, p) = aip * c + aiq * jqp;
          a(i, q) = aip * s + aiq * jqq;
          const cplx vip = v(i, p), viq = v(i, q);
          v(i, p) = vip * c + viq * jqp;
          v(i, q) = vip * s + viq * jqq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(jqp) * aqk;
          a(q, k) = s * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t i = 0; i < N; ++i) a(i, i) = a(i, i).real();
      }
    }
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return a(l, l).real() > a(r, r).real(); });

  HermEig<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < N; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

template HermEig<2> herm_eig<2>(const Mat<2>&, double);
template HermEig<3> herm_eig<3>(const Mat<3>&, double);
template HermEig<4> herm_eig<4>(const Mat<4>&, double);
template HermEig<8> herm_eig<8>(const Mat<8>&, double);

CMat4 kron(const CMat2& a, const CMat2& b) {
  CMat4 m;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return m;
}

CMat2 partial_trace(const CMat4& rho, Subsystem keep) {
  CMat2 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) {
        if (keep == Subsystem::A)
          out(i, j) += rho(2 * i + k, 2 * j + k);
        else
          out(i, j) += rho(2 * k + i, 2 * k + j);
      }
  return out;
}

CMat3 to_cmat(const RMat3& m) {
  CMat3 out;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) out(r, c) = m[r][c];
  return out;
}

RMat3 transpose(const RMat3& m) {
  RMat3 out{};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) out[c][r] = m[r][c];
  return out;
}

RMat3 multiply(const RMat3& a, const RMat3& b) {
  RMat3 out{};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t k = 0; k < 3; ++k) out[r][c] += a[r][k] * b[k][c];
  return out;
}

Vec3 multiply(const RMat3& m, const Vec3& v) {
  return {dot(m[0], v), dot(m[1], v), dot(m[2], v)};
}

}  // namespace qcorr
