#include "qcorr/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <span>

namespace qcorr {

namespace {

constexpr double kPi = std::numbers::pi;

// Values in [-1e-9, 0) are floating-point noise near a boundary.
double clamp_noise(double v) { return v < 0.0 && v >= -1e-9 ? 0.0 : v; }

double entropy_of(std::span<const double> spectrum) {
  double s = 0.0;
  for (double l : spectrum)
    if (l > 0.0) s -= l * std::log2(l);
  return std::max(0.0, s);
}

double norm_sq(const RMat3& r) {
  double s = 0.0;
  for (const auto& row : r)
    for (double v : row) s += v * v;
  return s;
}

// 2x2 blocks {11,44} and {22,33} of an X state.
std::array<double, 4> x_state_spectrum(const XState& x) {
  const double om = 0.5 * (x.rho11 + x.rho44);
  const double od = std::hypot(0.5 * (x.rho11 - x.rho44), std::abs(x.rho14));
  const double im = 0.5 * (x.rho22 + x.rho33);
  const double id = std::hypot(0.5 * (x.rho22 - x.rho33), std::abs(x.rho23));
  return {om + od, om - od, im + id, im - id};
}

Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  return {v[0] / n, v[1] / n, v[2] / n};
}

}  // namespace

// ---------------------------------------------------------------- entropies

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double bloch_entropy(double r) { return binary_entropy(0.5 * (1.0 + std::min(r, 1.0))); }

double von_neumann_entropy(const CMat2& rho) {
  const auto e = herm_eig(rho);
  return entropy_of(e.values);
}

double von_neumann_entropy(const CMat4& rho) {
  const auto e = herm_eig(rho);
  return entropy_of(e.values);
}

// ------------------------------------------------------------ measurements

MeasurementBasis MeasurementBasis::from_direction(const Vec3& n) {
  const Vec3 u = normalized(n);
  double phi = std::atan2(u[1], u[0]);
  if (phi < 0) phi += 2 * kPi;
  return {std::acos(std::clamp(u[2], -1.0, 1.0)), phi};
}

std::pair<CMat2, CMat2> MeasurementBasis::projectors() const {
  const Vec3 n = direction();
  CMat2 ns = sigma(1) * n[0] + sigma(2) * n[1] + sigma(3) * n[2];
  const CMat2 p1 = (sigma(0) + ns) * 0.5;
  return {p1, sigma(0) - p1};
}

DensityMatrix classicalize(const DensityMatrix& rho, const MeasurementBasis& basis_a,
                           const MeasurementBasis& basis_b) {
  const auto [p1, p2] = basis_a.projectors();
  const auto [q1, q2] = basis_b.projectors();
  CMat4 out;
  for (const CMat2* p : {&p1, &p2})
    for (const CMat2* q : {&q1, &q2}) {
      const CMat4 op = kron(*p, *q);
      out += op * rho.matrix() * op;
    }
  return DensityMatrix(out);
}

DensityMatrix measure_one_side(const DensityMatrix& rho, const MeasurementBasis& basis, Subsystem side) {
  const auto [p1, p2] = basis.projectors();
  CMat4 out;
  for (const CMat2* p : {&p1, &p2}) {
    const CMat4 op = side == Subsystem::A ? kron(*p, sigma(0)) : kron(sigma(0), *p);
    out += op * rho.matrix() * op;
  }
  return DensityMatrix(out);
}

// ------------------------------------------------------------- entanglement

double concurrence_witness(const DensityMatrix& rho) {
  // lambda_i are the singular values of A = sqrt(rho) Y sqrt(rho)^*, read off
  // the Hermitian dilation [[0, A], [A^dagger, 0]]. Taking square roots of the
  // eigenvalues of sqrt(rho) rho~ sqrt(rho) instead costs ~sqrt(eps) on
  // rank-deficient states. Eigenvalues below 1e-14 are rounding noise and are
  // zeroed; their square roots (~1e-8) would otherwise enter A at first order.
  const CMat4 flip = kron(sigma(2), sigma(2));
  const CMat4 root = herm_eig(rho.matrix()).apply([](double l) { return l < 1e-14 ? 0.0 : std::sqrt(l); });
  const CMat4 a = root * flip * root.conjugate();
  Mat<8> dilation;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      dilation(r, c + 4) = a(r, c);
      dilation(c + 4, r) = std::conj(a(r, c));
    }
  const auto f = herm_eig(dilation, 1e-8);  // descending: sigma_1..4, then -sigma_4..1
  return f.values[0] - f.values[1] - f.values[2] - f.values[3];
}

double concurrence(const DensityMatrix& rho) { return std::clamp(concurrence_witness(rho), 0.0, 1.0); }

ConcurrenceX concurrence_x(const XState& x) {
  const double c1 = std::abs(x.rho14) - std::sqrt(std::max(0.0, x.rho22 * x.rho33));
  const double c2 = std::abs(x.rho23) - std::sqrt(std::max(0.0, x.rho11 * x.rho44));
  ConcurrenceX out;
  out.witness = 2.0 * std::max(c1, c2);
  if (out.witness > 0.0) {
    out.value = std::min(out.witness, 1.0);
    out.branch = c1 >= c2 ? ConcurrenceBranch::C1 : ConcurrenceBranch::C2;
  }
  return out;
}

double eof_from_concurrence(double c) {
  c = std::clamp(c, 0.0, 1.0);
  if (c == 0.0) return 0.0;
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

double eof(const DensityMatrix& rho) { return eof_from_concurrence(concurrence(rho)); }

// ----------------------------------------------------------- total and MID

double mutual_information(const DensityMatrix& rho) {
  const double sa = von_neumann_entropy(partial_trace(rho.matrix(), Subsystem::A));
  const double sb = von_neumann_entropy(partial_trace(rho.matrix(), Subsystem::B));
  return clamp_noise(sa + sb - von_neumann_entropy(rho));
}

MidResult mid(const DensityMatrix& rho) {
  const BlochForm b = to_bloch(rho);
  const auto ea = herm_eig(partial_trace(rho.matrix(), Subsystem::A));
  const auto eb = herm_eig(partial_trace(rho.matrix(), Subsystem::B));

  MidResult out;
  out.degenerate_a = ea.values[0] - ea.values[1] < kMidDegeneracyGap;
  out.degenerate_b = eb.values[0] - eb.values[1] < kMidDegeneracyGap;

  const Vec3 z{0.0, 0.0, 1.0};
  Vec3 n = out.degenerate_a ? z : normalized(b.x);
  Vec3 m = out.degenerate_b ? z : normalized(b.y);
  constexpr double tiny = 1e-12;

  if (out.degenerate_a && out.degenerate_b) {
    const auto k = herm_eig(to_cmat(multiply(b.r, transpose(b.r))));
    if (k.values[0] > tiny * tiny) {
      n = {k.vectors(0, 0).real(), k.vectors(1, 0).real(), k.vectors(2, 0).real()};
      n = normalized(n);
      m = normalized(multiply(transpose(b.r), n));
    }
  } else if (out.degenerate_a) {
    const Vec3 v = multiply(b.r, m);
    if (norm(v) > tiny) n = normalized(v);
  } else if (out.degenerate_b) {
    const Vec3 w = multiply(transpose(b.r), n);
    if (norm(w) > tiny) m = normalized(w);
  }

  out.basis_a = MeasurementBasis::from_direction(n);
  out.basis_b = MeasurementBasis::from_direction(m);
  const DensityMatrix classical = classicalize(rho, out.basis_a, out.basis_b);
  out.value = clamp_noise(mutual_information(rho) - mutual_information(classical));
  return out;
}

double mid_x(const XState& x) {
  const std::array<double, 4> diag{x.rho11, x.rho22, x.rho33, x.rho44};
  return clamp_noise(entropy_of(diag) - entropy_of(x_state_spectrum(x)));
}

// ----------------------------------------------------------------- discord

double conditional_entropy(const BlochForm& b, const Vec3& n, Subsystem side) {
  const Vec3& own = side == Subsystem::A ? b.x : b.y;
  const Vec3& other = side == Subsystem::A ? b.y : b.x;
  // Correlation seen by the unmeasured side: R^T n (measure a) or R n (measure b).
  Vec3 corr{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (side == Subsystem::A)
        corr[j] += n[i] * b.r[i][j];
      else
        corr[i] += b.r[i][j] * n[j];
    }
  const double proj = dot(n, own);
  double s = 0.0;
  for (double sign : {1.0, -1.0}) {
    const double p = 0.5 * (1.0 + sign * proj);
    if (p <= 1e-15) continue;
    const Vec3 v{other[0] + sign * corr[0], other[1] + sign * corr[1], other[2] + sign * corr[2]};
    s += p * bloch_entropy(norm(v) / (2.0 * p));
  }
  return s;
}

QdResult qd_bruteforce(const DensityMatrix& rho, const SphereGrid& grid, Subsystem side) {
  const BlochForm b = to_bloch(rho);
  const SphereMinimum best =
      minimize_on_sphere([&](const Vec3& n) { return conditional_entropy(b, n, side); }, grid);
  const double s_measured = von_neumann_entropy(partial_trace(rho.matrix(), side));
  QdResult out;
  out.conditional_entropy = best.value;
  out.value = clamp_noise(s_measured - von_neumann_entropy(rho) + best.value);
  out.basis = {best.theta, best.phi};
  out.theta_branch = ThetaBranch::Generic;
  out.phi_branch = PhiBranch::Degenerate;
  return out;
}

QdResult qd_x(const XState& x) {
  const double x3 = x.rho11 + x.rho22 - x.rho33 - x.rho44;
  const double y3 = x.rho11 - x.rho22 + x.rho33 - x.rho44;
  const double r33 = x.rho11 - x.rho22 - x.rho33 + x.rho44;
  const double a14 = std::abs(x.rho14);
  const double a23 = std::abs(x.rho23);
  const double s = 2.0 * (a14 + a23);

  // Conditional entropy on the phi-optimal slice, c = cos(theta).
  auto cond = [&](double c) {
    double total = 0.0;
    for (double sign : {1.0, -1.0}) {
      const double p = 0.5 * (1.0 + sign * c * x3);
      if (p <= 1e-15) continue;
      const double lhs = y3 + sign * c * r33;
      const double len = std::sqrt(lhs * lhs + (1.0 - c * c) * s * s) / (2.0 * p);
      total += p * bloch_entropy(len);
    }
    return total;
  };

  // theta = pi/2 with delta at its maximum 2|rho14||rho23|.
  const double delta = 2.0 * a14 * a23;
  const double lead = 1.0 - 2.0 * (x.rho11 + x.rho33);
  const double tau = 0.5 * (1.0 - std::sqrt(lead * lead + 4.0 * (a14 * a14 + a23 * a23 + delta)));
  const double equatorial = binary_entropy(tau);
  const double polar = cond(1.0);

  // Interior candidates: dense scan then golden-section polish.
  constexpr int scan = 200;
  double best_c = 0.0;
  double best_v = cond(0.0);
  for (int i = 1; i < scan; ++i) {
    const double c = static_cast<double>(i) / scan;
    const double v = cond(c);
    if (v < best_v) {
      best_v = v;
      best_c = c;
    }
  }
  double interior_c = best_c;
  double interior = best_v;
  if (best_c > 0.0) {
    double lo = std::max(0.0, best_c - 1.0 / scan);
    double hi = std::min(1.0, best_c + 1.0 / scan);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c1 = hi - g * (hi - lo), c2 = lo + g * (hi - lo);
    double f1 = cond(c1), f2 = cond(c2);
    while (hi - lo > 1e-12) {
      if (f1 < f2) {
        hi = c2;
        c2 = c1;
        f2 = f1;
        c1 = hi - g * (hi - lo);
        f1 = cond(c1);
      } else {
        lo = c1;
        c1 = c2;
        f1 = f2;
        c2 = lo + g * (hi - lo);
        f2 = cond(c2);
      }
    }
    interior_c = f1 < f2 ? c1 : c2;
    interior = std::min(f1, f2);
  }

  QdResult out;
  const double phi_opt = -0.5 * (std::arg(x.rho14) + std::arg(x.rho23));
  double chosen = equatorial;
  out.theta_branch = ThetaBranch::Equatorial;
  out.basis = {kPi / 2, phi_opt};
  if (polar < chosen - 1e-14) {
    chosen = polar;
    out.theta_branch = ThetaBranch::Polar;
    out.basis = {0.0, 0.0};
  }
  if (interior < chosen - 1e-14 && interior_c > 0.0 && interior_c < 1.0) {
    chosen = interior;
    out.theta_branch = ThetaBranch::Interior;
    out.basis = {std::acos(interior_c), phi_opt};
  }
  const auto c = canonical_angles({0.0, out.basis.theta, out.basis.phi});
  out.basis = {c.theta, c.phi};

  if (out.theta_branch == ThetaBranch::Polar || a14 * a23 < 1e-14)
    out.phi_branch = PhiBranch::Degenerate;
  else
    out.phi_branch = x.rho23.real() >= 0.0 ? PhiBranch::Integer : PhiBranch::HalfInteger;

  const double sa = binary_entropy(0.5 * (1.0 + x3));
  out.conditional_entropy = chosen;
  out.value = clamp_noise(sa - entropy_of(x_state_spectrum(x)) + chosen);
  return out;
}

QdResult qd_symmetric(const DensityMatrix& rho, const SphereGrid& grid) {
  const QdResult a = qd_bruteforce(rho, grid, Subsystem::A);
  const QdResult b = qd_bruteforce(rho, grid, Subsystem::B);
  return b.value < a.value ? b : a;
}

// ------------------------------------------------------- geometric discord

RMat3 k_matrix(const BlochForm& b) {
  RMat3 k = multiply(b.r, transpose(b.r));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) k[i][j] += b.x[i] * b.x[j];
  return k;
}

GmqdResult gmqd(const DensityMatrix& rho) {
  const BlochForm b = to_bloch(rho);
  const auto e = herm_eig(to_cmat(k_matrix(b)));
  GmqdResult out;
  out.k = e.values;
  out.direction = normalized({e.vectors(0, 0).real(), e.vectors(1, 0).real(), e.vectors(2, 0).real()});
  out.degenerate = e.values[0] - e.values[1] < 1e-10;
  out.value = clamp_noise(0.25 * (dot(b.x, b.x) + norm_sq(b.r) - e.values[0]));
  out.branch = GmqdBranch::Generic;
  return out;
}

std::array<double, 3> gmqd_x_eigenvalues(const XState& x) {
  const double a14 = std::abs(x.rho14);
  const double a23 = std::abs(x.rho23);
  const double k3 = 2.0 * (x.rho11 * x.rho11 + x.rho22 * x.rho22 + x.rho33 * x.rho33 + x.rho44 * x.rho44) -
                    4.0 * (x.rho11 * x.rho33 + x.rho22 * x.rho44);
  return {4.0 * (a14 + a23) * (a14 + a23), 4.0 * (a14 - a23) * (a14 - a23), k3};
}

GmqdResult gmqd_x(const XState& x) {
  const auto k = gmqd_x_eigenvalues(x);
  std::size_t imax = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (k[i] > k[imax]) imax = i;

  GmqdResult out;
  out.branch = static_cast<GmqdBranch>(imax);
  out.value = clamp_noise(0.25 * (k[0] + k[1] + k[2] - k[imax]));
  out.k = k;
  std::sort(out.k.begin(), out.k.end(), std::greater<>());
  out.degenerate = out.k[0] - out.k[1] < 1e-10;

  // In-plane eigenvectors (1, (Re z -+ |z|)/Im z, 0) with z = rho14 rho23,
  // written without the division.
  const cplx z = x.rho14 * x.rho23;
  const double az = std::abs(z);
  auto in_plane = [&](bool plus) -> Vec3 {
    // plus selects the k1 vector
    const double sgn = plus ? 1.0 : -1.0;
    Vec3 v = z.real() * sgn >= 0.0 ? Vec3{z.real() + sgn * az, -z.imag(), 0.0}
                                   : Vec3{z.imag(), z.real() - sgn * az, 0.0};
    if (plus && norm(v) < 1e-300) v = {1.0, 0.0, 0.0};
    if (!plus && norm(v) < 1e-300) v = {0.0, 1.0, 0.0};
    return normalized(v);
  };
  switch (out.branch) {
    case GmqdBranch::K1:
      out.direction = in_plane(true);
      break;
    case GmqdBranch::K2:
      out.direction = in_plane(false);
      break;
    default:
      out.direction = {0.0, 0.0, 1.0};
  }
  return out;
}

OptimalDirection gmqd_optimal_direction(const DensityMatrix& rho) {
  const GmqdResult g = gmqd(rho);
  return {g.direction, g.degenerate};
}

// ------------------------------------------------------------------ report

CorrelationReport correlations(const DensityMatrix& rho, const ReportOptions& options) {
  CorrelationReport r;
  const MidResult m = mid(rho);
  r.mid = m.value;
  r.mid_degenerate = m.degenerate_a || m.degenerate_b;

  const std::optional<XState> x = options.use_x_fast_path ? as_x_state(rho) : std::nullopt;
  if (x) {
    r.x_state = true;
    const ConcurrenceX c = concurrence_x(*x);
    r.concurrence = c.value;
    r.concurrence_witness = c.witness;
    r.concurrence_branch = c.branch;

    QdResult q = qd_x(*x);
    if (options.symmetric_qd) {
      XState swapped = *x;
      std::swap(swapped.rho22, swapped.rho33);
      swapped.rho23 = std::conj(x->rho23);
      const QdResult qb = qd_x(swapped);
      if (qb.value < q.value) q = qb;
    }
    r.qd = q.value;
    r.qd_basis = q.basis;
    r.qd_theta_branch = q.theta_branch;
    r.qd_phi_branch = q.phi_branch;

    const GmqdResult g = gmqd_x(*x);
    r.gmqd = g.value;
    r.gmqd_branch = g.branch;
    r.gmqd_degenerate = g.degenerate;
  } else {
    r.concurrence_witness = concurrence_witness(rho);
    r.concurrence = std::clamp(r.concurrence_witness, 0.0, 1.0);
    r.concurrence_branch = ConcurrenceBranch::None;

    const QdResult q = options.symmetric_qd ? qd_symmetric(rho, options.qd_grid)
                                            : qd_bruteforce(rho, options.qd_grid, Subsystem::A);
    r.qd = q.value;
    r.qd_basis = q.basis;
    r.qd_theta_branch = q.theta_branch;
    r.qd_phi_branch = q.phi_branch;

    const GmqdResult g = gmqd(rho);
    r.gmqd = g.value;
    r.gmqd_branch = g.branch;
    r.gmqd_degenerate = g.degenerate;
  }
  r.eof = eof_from_concurrence(r.concurrence);
  return r;
}

const char* to_string(ThetaBranch b) {
  switch (b) {
    case ThetaBranch::Equatorial:
      return "equatorial";
    case ThetaBranch::Polar:
      return "polar";
    case ThetaBranch::Interior:
      return "interior";
    case ThetaBranch::Generic:
      return "generic";
  }
  return "?";
}

const char* to_string(PhiBranch b) {
  switch (b) {
    case PhiBranch::Integer:
      return "k*pi";
    case PhiBranch::HalfInteger:
      return "(k+1/2)*pi";
    case PhiBranch::Degenerate:
      return "none";
  }
  return "?";
}

const char* to_string(GmqdBranch b) {
  switch (b) {
    case GmqdBranch::K1:
      return "k1";
    case GmqdBranch::K2:
      return "k2";
    case GmqdBranch::K3:
      return "k3";
    case GmqdBranch::Generic:
      return "generic";
  }
  return "?";
}

const char* to_string(ConcurrenceBranch b) {
  switch (b) {
    case ConcurrenceBranch::None:
      return "none";
    case ConcurrenceBranch::C1:
      return "C1";
    case ConcurrenceBranch::C2:
      return "C2";
  }
  return "?";
}

}  // namespace qcorr
