// Two-qubit density matrices: validated value type, X-state view, Bloch
// decomposition, standard constructors, and the plain-text state file.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "qcorr/linalg.hpp"

namespace qcorr {

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-9;
inline constexpr double kXStateTolerance = 1e-10;

// Hermitian, unit-trace, positive semidefinite 4x4 matrix. The stored
// matrix is the Hermitian part of the validated input.
class DensityMatrix {
 public:
  // Throws ValidationError when the invariants fail.
  explicit DensityMatrix(const CMat4& m, double psd_tol = kPsdTolerance);

  static DensityMatrix maximally_mixed();

  const CMat4& matrix() const noexcept { return m_; }
  cplx operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  double purity() const;

 private:
  CMat4 m_;
};

struct XState {
  double rho11 = 0, rho22 = 0, rho33 = 0, rho44 = 0;
  cplx rho14 = 0, rho23 = 0;

  // Throws ValidationError on trace or positivity violation.
  void validate() const;
  DensityMatrix to_density() const;
};

struct BlochForm {
  Vec3 x{};   // tr(rho sigma_i (x) 1)
  Vec3 y{};   // tr(rho 1 (x) sigma_j)
  RMat3 r{};  // r[i][j] = tr(rho sigma_i (x) sigma_j)

  // rho = 1/4 (1 + x.sigma (x) 1 + 1 (x) y.sigma + sum r_ij sigma_i (x) sigma_j)
  CMat4 reconstruct() const;
};

// alpha|e1 e2> + sqrt(1 - alpha^2)|g1 g2>, alpha a real amplitude in [0, 1].
DensityMatrix bell_like(double alpha);

// p |Psi><Psi| + (1 - p) 1/4 with |Psi> the Bell-like state above.
DensityMatrix werner_like(double alpha, double p);

BlochForm to_bloch(const DensityMatrix& rho);

// The X-state view when every entry off the diagonal and anti-diagonal is
// below tol in magnitude; std::nullopt sends callers to the generic paths.
std::optional<XState> as_x_state(const DensityMatrix& rho, double tol = kXStateTolerance);

// Plain text, one "row col re im" line per entry (16 lines, 1-based
// indices, basis order of linalg.hpp). '#' comments and blank lines are
// ignored on read. Throws ValidationError on malformed or invalid input.
DensityMatrix read_state(std::istream& in);
DensityMatrix read_state_file(const std::filesystem::path& path);
void write_state(std::ostream& out, const DensityMatrix& rho);
void write_state_file(const std::filesystem::path& path, const DensityMatrix& rho);

}  // namespace qcorr
