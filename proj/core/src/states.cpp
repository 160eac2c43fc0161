#include "qcorr/states.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "qcorr/error.hpp"

namespace qcorr {

DensityMatrix::DensityMatrix(const CMat4& m, double psd_tol) {
  for (const auto& z : m.data())
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw ValidationError("density matrix has non-finite entries");
  if (!m.is_hermitian(kHermitianTolerance)) throw ValidationError("density matrix is not Hermitian");
  m_ = m.hermitian_part();
  if (std::abs(m_.trace().real() - 1.0) > kTraceTolerance)
    throw ValidationError("density matrix trace is not 1");
  if (herm_eig(m_).values[3] < -psd_tol) throw ValidationError("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::maximally_mixed() { return DensityMatrix(CMat4::identity() * 0.25); }

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

void XState::validate() const {
  const double tr = rho11 + rho22 + rho33 + rho44;
  if (std::abs(tr - 1.0) > kTraceTolerance) throw ValidationError("X state diagonal does not sum to 1");
  if (rho11 < -kPsdTolerance || rho22 < -kPsdTolerance || rho33 < -kPsdTolerance || rho44 < -kPsdTolerance)
    throw ValidationError("X state has negative populations");
  if (std::abs(rho14) > std::sqrt(std::max(0.0, rho11 * rho44)) + 1e-9 ||
      std::abs(rho23) > std::sqrt(std::max(0.0, rho22 * rho33)) + 1e-9)
    throw ValidationError("X state coherences violate positivity");
}

DensityMatrix XState::to_density() const {
  validate();
  CMat4 m;
  m(0, 0) = rho11;
  m(1, 1) = rho22;
  m(2, 2) = rho33;
  m(3, 3) = rho44;
  m(0, 3) = rho14;
  m(3, 0) = std::conj(rho14);
  m(1, 2) = rho23;
  m(2, 1) = std::conj(rho23);
  return DensityMatrix(m);
}

CMat4 BlochForm::reconstruct() const {
  const CMat2 id = sigma(0);
  CMat4 m = kron(id, id);
  for (int i = 0; i < 3; ++i) {
    m += x[i] * kron(sigma(i + 1), id);
    m += y[i] * kron(id, sigma(i + 1));
    for (int j = 0; j < 3; ++j) m += r[i][j] * kron(sigma(i + 1), sigma(j + 1));
  }
  return m * 0.25;
}

DensityMatrix bell_like(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("bell_like: alpha must lie in [0, 1]");
  const double beta = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
  const std::array<double, 4> psi{alpha, 0.0, 0.0, beta};
  CMat4 m;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) m(r, c) = psi[r] * psi[c];
  return DensityMatrix(m);
}

DensityMatrix werner_like(double alpha, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("werner_like: p must lie in [0, 1]");
  const CMat4 pure = bell_like(alpha).matrix();
  return DensityMatrix(pure * p + CMat4::identity() * (0.25 * (1.0 - p)));
}

BlochForm to_bloch(const DensityMatrix& rho) {
  BlochForm b;
  const CMat2 id = sigma(0);
  const CMat4& m = rho.matrix();
  auto expect = [&](const CMat4& op) { return (m * op).trace().real(); };
  for (int i = 0; i < 3; ++i) {
    b.x[i] = expect(kron(sigma(i + 1), id));
    b.y[i] = expect(kron(id, sigma(i + 1)));
    for (int j = 0; j < 3; ++j) b.r[i][j] = expect(kron(sigma(i + 1), sigma(j + 1)));
  }
  return b;
}

std::optional<XState> as_x_state(const DensityMatrix& rho, double tol) {
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      const bool x_slot = (r == c) || (r + c == 3);
      if (!x_slot && std::abs(rho(r, c)) >= tol) return std::nullopt;
    }
  XState x;
  x.rho11 = rho(0, 0).real();
  x.rho22 = rho(1, 1).real();
  x.rho33 = rho(2, 2).real();
  x.rho44 = rho(3, 3).real();
  x.rho14 = rho(0, 3);
  x.rho23 = rho(1, 2);
  return x;
}

DensityMatrix read_state(std::istream& in) {
  CMat4 m;
  std::array<bool, 16> seen{};
  std::string line;
  int lineno = 0;
  int count = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    int row = 0, col = 0;
    double re = 0, im = 0;
    if (!(ls >> row >> col >> re >> im))
      throw ValidationError("state file line " + std::to_string(lineno) + ": expected 'row col re im'");
    std::string rest;
    if (ls >> rest) throw ValidationError("state file line " + std::to_string(lineno) + ": trailing tokens");
    if (row < 1 || row > 4 || col < 1 || col > 4)
      throw ValidationError("state file line " + std::to_string(lineno) + ": index out of range 1..4");
    const auto slot = static_cast<std::size_t>((row - 1) * 4 + (col - 1));
    if (seen[slot]) throw ValidationError("state file line " + std::to_string(lineno) + ": duplicate entry");
    seen[slot] = true;
    m(row - 1, col - 1) = cplx(re, im);
    ++count;
  }
  if (count != 16) throw ValidationError("state file must contain exactly 16 entries");
  return DensityMatrix(m);
}

DensityMatrix read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open state file: " + path.string());
  return read_state(in);
}

void write_state(std::ostream& out, const DensityMatrix& rho) {
  const auto old = out.precision(17);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      out << r + 1 << ' ' << c + 1 << ' ' << rho(r, c).real() << ' ' << rho(r, c).imag() << '\n';
  out.precision(old);
}

void write_state_file(const std::filesystem::path& path, const DensityMatrix& rho) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write state file: " + path.string());
  write_state(out, rho);
}

}  // namespace qcorr
