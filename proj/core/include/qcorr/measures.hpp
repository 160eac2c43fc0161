// Correlation measures for two-qubit states: concurrence and entanglement
// of formation, mutual information, measurement-induced disturbance (MID),
// quantum discord (QD) and its geometric version (GMQD).
//
// Every measure has a generic path valid for any density matrix. X states
// additionally get closed forms; the generic paths are the oracles for
// them. Entropies are in bits.

#pragma once

#include <array>
#include <optional>
#include <utility>

#include "qcorr/sphere_search.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

// ---------------------------------------------------------------- entropies

// H(p) = -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0.
double binary_entropy(double p);

// Entropy of a qubit state with Bloch vector length r.
double bloch_entropy(double r);

double von_neumann_entropy(const CMat2& rho);
double von_neumann_entropy(const CMat4& rho);
inline double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

// ------------------------------------------------------------ measurements

struct MeasurementBasis {
  double theta = 0.0;
  double phi = 0.0;

  static MeasurementBasis from_direction(const Vec3& n);
  Vec3 direction() const { return unit_vector(theta, phi); }
  // (1 + n.sigma)/2 and 1 minus that.
  std::pair<CMat2, CMat2> projectors() const;
};

// sum_ij (P_i (x) Q_j) rho (P_i (x) Q_j)
DensityMatrix classicalize(const DensityMatrix& rho, const MeasurementBasis& basis_a,
                           const MeasurementBasis& basis_b);

// sum_k (P_k (x) 1) rho (P_k (x) 1), or the mirror image when side is B.
DensityMatrix measure_one_side(const DensityMatrix& rho, const MeasurementBasis& basis,
                               Subsystem side = Subsystem::A);

// ------------------------------------------------------------- entanglement

enum class ConcurrenceBranch { None, C1, C2 };

struct ConcurrenceX {
  double value = 0.0;
  // 2 max(C1, C2) before clamping at zero; its sign change marks the
  // entanglement boundary.
  double witness = 0.0;
  ConcurrenceBranch branch = ConcurrenceBranch::None;
};

// Wootters concurrence from the spin-flipped spectrum.
double concurrence(const DensityMatrix& rho);
// lambda1 - lambda2 - lambda3 - lambda4, unclamped.
double concurrence_witness(const DensityMatrix& rho);
// C = 2 max{0, |rho14| - sqrt(rho22 rho33), |rho23| - sqrt(rho11 rho44)}.
ConcurrenceX concurrence_x(const XState& x);

double eof_from_concurrence(double c);
double eof(const DensityMatrix& rho);

// ----------------------------------------------------------- total and MID

double mutual_information(const DensityMatrix& rho);

struct MidResult {
  double value = 0.0;
  MeasurementBasis basis_a;
  MeasurementBasis basis_b;
  // Marginal eigenvalue gap below kMidDegeneracyGap: the corresponding
  // basis was chosen to maximise the classical correlation that survives
  // the measurement (sigma^3 when no correlation is left to keep).
  bool degenerate_a = false;
  bool degenerate_b = false;
};

inline constexpr double kMidDegeneracyGap = 1e-8;

MidResult mid(const DensityMatrix& rho);
// S(diag rho) - S(rho); equals mid() when the X state's marginals are
// non-degenerate.
double mid_x(const XState& x);

// ----------------------------------------------------------------- discord

enum class ThetaBranch { Equatorial, Polar, Interior, Generic };
enum class PhiBranch { Integer, HalfInteger, Degenerate };

struct QdResult {
  double value = 0.0;
  MeasurementBasis basis;  // optimal projective measurement on the measured side
  double conditional_entropy = 0.0;
  ThetaBranch theta_branch = ThetaBranch::Generic;
  // For X states on the theta = pi/2 branch: whether the optimal phi sits at
  // k pi or (k + 1/2) pi relative to the -arg(rho14)/2 reference.
  PhiBranch phi_branch = PhiBranch::Degenerate;
};

// S(rho | {Pi_k}) for the measurement along n on `side`.
double conditional_entropy(const BlochForm& bloch, const Vec3& n, Subsystem side = Subsystem::A);

// Grid search over measurement directions. Upper bound on the true QD.
QdResult qd_bruteforce(const DensityMatrix& rho, const SphereGrid& grid = SphereGrid::production(),
                       Subsystem side = Subsystem::A);

// Closed form for X states, measurement on a.
QdResult qd_x(const XState& x);

// min over measurements on a and on b.
QdResult qd_symmetric(const DensityMatrix& rho, const SphereGrid& grid = SphereGrid::production());

// ------------------------------------------------------- geometric discord

enum class GmqdBranch { K1, K2, K3, Generic };

struct GmqdResult {
  double value = 0.0;
  std::array<double, 3> k{};  // spectrum of K = x x^T + R R^T, descending
  Vec3 direction{};           // eigenvector of k_max
  bool degenerate = false;    // k_max gap below 1e-10
  GmqdBranch branch = GmqdBranch::Generic;
};

RMat3 k_matrix(const BlochForm& bloch);

// 1/4 (|x|^2 + |R|^2 - k_max).
GmqdResult gmqd(const DensityMatrix& rho);

// k1,2 = 4 (|rho14| +- |rho23|)^2, k3 = 2 sum rho_nn^2 - 4 (rho11 rho33 + rho22 rho44).
std::array<double, 3> gmqd_x_eigenvalues(const XState& x);
// Value and branch from the closed-form spectrum.
GmqdResult gmqd_x(const XState& x);

struct OptimalDirection {
  Vec3 e{};
  bool degenerate = false;
};
OptimalDirection gmqd_optimal_direction(const DensityMatrix& rho);

// ------------------------------------------------------------------ report

struct ReportOptions {
  SphereGrid qd_grid = SphereGrid::production();
  // min over both measured sides instead of a only; off by default.
  bool symmetric_qd = false;
  // Take the closed forms when the state is an X state.
  bool use_x_fast_path = true;
};

struct CorrelationReport {
  double concurrence = 0.0;
  double eof = 0.0;
  double mid = 0.0;
  double qd = 0.0;
  double gmqd = 0.0;

  MeasurementBasis qd_basis;
  ThetaBranch qd_theta_branch = ThetaBranch::Generic;
  PhiBranch qd_phi_branch = PhiBranch::Degenerate;
  GmqdBranch gmqd_branch = GmqdBranch::Generic;
  ConcurrenceBranch concurrence_branch = ConcurrenceBranch::None;
  double concurrence_witness = 0.0;
  bool x_state = false;
  bool mid_degenerate = false;
  bool gmqd_degenerate = false;
};

CorrelationReport correlations(const DensityMatrix& rho, const ReportOptions& options = {});

const char* to_string(ThetaBranch b);
const char* to_string(PhiBranch b);
const char* to_string(GmqdBranch b);
const char* to_string(ConcurrenceBranch b);

}  // namespace qcorr
