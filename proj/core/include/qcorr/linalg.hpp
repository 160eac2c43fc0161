// Fixed-size dense complex matrices for two-qubit problems.
//
// Everything here is sized at compile time: 2x2 single-qubit operators,
// 4x4 two-qubit operators and 3x3 real-symmetric correlation matrices
// (stored as complex so one eigensolver serves all three).
//
// Two-qubit basis order is {|e1 e2>, |e1 g2>, |g1 e2>, |g1 g2>}, i.e. qubit a
// is the most significant index and the excited level |e> is index 0.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace qcorr {

using cplx = std::complex<double>;

template <std::size_t N>
class Mat {
  static_assert(N == 2 || N == 3 || N == 4 || N == 8, "sizes 2, 3, 4 and 8 (dilations of 4x4)");

 public:
  static constexpr std::size_t dim = N;

  Mat() = default;

  static Mat identity() {
    Mat m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static Mat diagonal(const std::array<double, N>& d) {
    Mat m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  cplx& operator()(std::size_t r, std::size_t c) { return a_[r * N + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * N + c]; }

  Mat adjoint() const {
    Mat m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
  }

  Mat conjugate() const {
    Mat m;
    for (std::size_t i = 0; i < N * N; ++i) m.a_[i] = std::conj(a_[i]);
    return m;
  }

  Mat transpose() const {
    Mat m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) m(c, r) = (*this)(r, c);
    return m;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : a_) s += std::norm(z);
    return std::sqrt(s);
  }

  // Largest elementwise modulus of (this - other).
  double max_abs_diff(const Mat& other) const {
    double d = 0.0;
    for (std::size_t i = 0; i < N * N; ++i) d = std::max(d, std::abs(a_[i] - other.a_[i]));
    return d;
  }

  bool is_hermitian(double tol) const {
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = r; c < N; ++c)
        if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
    return true;
  }

  // (A + A^dagger) / 2
  Mat hermitian_part() const {
    Mat m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c)
        m(r, c) = 0.5 * ((*this)(r, c) + std::conj((*this)(c, r)));
    return m;
  }

  Mat& operator+=(const Mat& o) {
    for (std::size_t i = 0; i < N * N; ++i) a_[i] += o.a_[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    for (std::size_t i = 0; i < N * N; ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Mat& operator*=(cplx s) {
    for (auto& z : a_) z *= s;
    return *this;
  }

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(Mat a, cplx s) { return a *= s; }
  friend Mat operator*(cplx s, Mat a) { return a *= s; }
  friend Mat operator-(Mat a) { return a *= -1.0; }

  friend Mat operator*(const Mat& a, const Mat& b) {
    Mat m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t k = 0; k < N; ++k) {
        const cplx ark = a(r, k);
        if (ark == cplx{}) continue;
        for (std::size_t c = 0; c < N; ++c) m(r, c) += ark * b(k, c);
      }
    return m;
  }

  friend bool operator==(const Mat&, const Mat&) = default;

  const std::array<cplx, N * N>& data() const { return a_; }

 private:
  std::array<cplx, N * N> a_{};
};

using CMat2 = Mat<2>;
using CMat3 = Mat<3>;
using CMat4 = Mat<4>;

using Vec3 = std::array<double, 3>;
using RMat3 = std::array<Vec3, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// Pauli operators in the {|e>, |g>} basis; sigma(0) is the identity.
CMat2 sigma(int i);

template <std::size_t N>
struct HermEig {
  std::array<double, N> values;  // descending
  Mat<N> vectors;                // column k belongs to values[k]

  Mat<N> reconstruct() const {
    Mat<N> out;
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c)
          out(r, c) += values[k] * vectors(r, k) * std::conj(vectors(c, k));
    return out;
  }

  // f applied on the spectrum: V f(Lambda) V^dagger.
  template <class F>
  Mat<N> apply(F f) const {
    HermEig copy = *this;
    for (auto& v : copy.values) v = f(v);
    return copy.reconstruct();
  }
};

// Cyclic complex Jacobi. Throws ValidationError when A is not Hermitian
// within herm_tol elementwise.
template <std::size_t N>
HermEig<N> herm_eig(const Mat<N>& a, double herm_tol = 1e-10);

extern template HermEig<2> herm_eig<2>(const Mat<2>&, double);
extern template HermEig<3> herm_eig<3>(const Mat<3>&, double);
extern template HermEig<4> herm_eig<4>(const Mat<4>&, double);
extern template HermEig<8> herm_eig<8>(const Mat<8>&, double);

CMat4 kron(const CMat2& a, const CMat2& b);

enum class Subsystem { A, B };

CMat2 partial_trace(const CMat4& rho, Subsystem keep);

// Real 3x3 helpers for Bloch-form algebra.
CMat3 to_cmat(const RMat3& m);
RMat3 transpose(const RMat3& m);
RMat3 multiply(const RMat3& a, const RMat3& b);
Vec3 multiply(const RMat3& m, const Vec3& v);

}  // namespace qcorr
